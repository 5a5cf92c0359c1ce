#include "cheb/json_util.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace cheb {

double round9(double v) {
  if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({round9(z.real()), round9(z.imag())}); }

nlohmann::json xcomplex_json(const XComplex& z) {
  if (z.is_infinite()) return "Infinity";
  return complex_json(z.value());
}

}  // namespace cheb
