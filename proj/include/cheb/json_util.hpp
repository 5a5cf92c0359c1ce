#pragma once

#include <json.hpp>

#include "cheb/numeric.hpp"

namespace cheb {

/// Rounds to 9 significant digits so that dumped JSON stays short and
/// stable across platforms.
double round9(double v);

nlohmann::json complex_json(Complex z);
/// [re, im] or the string "Infinity".
nlohmann::json xcomplex_json(const XComplex& z);

}  // namespace cheb
