#include "cheb/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace cheb {

XComplex::XComplex(Complex value) {
  if (std::isnan(value.real()) || std::isnan(value.imag()))
    throw std::domain_error("XComplex: NaN component");
  if (std::isinf(value.real()) || std::isinf(value.imag())) {
    infinite_ = true;
    return;
  }
  value_ = value;
}

Complex XComplex::value() const {
  if (infinite_) throw std::logic_error("XComplex: value() of the point at infinity");
  return value_;
}

RealPoly::RealPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw std::invalid_argument("RealPoly: non-finite coefficient");
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Complex poly_eval(const RealPoly& p, Complex z) {
  const auto& c = p.coeffs();
  Complex acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double poly_eval(const RealPoly& p, double x) {
  const auto& c = p.coeffs();
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

XComplex poly_eval(const RealPoly& p, const XComplex& z) {
  if (p.is_zero()) return XComplex(0.0);
  if (p.degree() == 0) return XComplex(p[0]);
  if (z.is_infinite()) return XComplex::infinity();
  const Complex v = poly_eval(p, z.value());
  // Overflow in Horner can surface as inf or inf-inf; both mean the leading
  // term won.
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return XComplex::infinity();
  return XComplex(v);
}

RealPoly poly_derivative(const RealPoly& p) {
  const auto& c = p.coeffs();
  if (c.size() <= 1) return RealPoly{};
  std::vector<double> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
  return RealPoly(std::move(d));
}

int RootSet::total_multiplicity() const {
  int total = 0;
  for (const auto& r : roots) total += r.multiplicity;
  return total;
}

}  // namespace cheb
