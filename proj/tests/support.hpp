#pragma once

// Test-only helpers: deterministic RNG and oracles that do not go through
// the library's evaluation paths.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace test_support {

using Complex = std::complex<double>;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

/// Integer polynomial arithmetic (ascending coefficients).
using IntPoly = std::vector<long long>;

inline IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline IntPoly derivative(const IntPoly& a) {
  IntPoly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(static_cast<long long>(i) * a[i]);
  return out;
}

inline IntPoly subtract(IntPoly a, const IntPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  return a;
}

inline IntPoly power(const IntPoly& base, int e) {
  IntPoly out{1};
  for (int i = 0; i < e; ++i) out = multiply(out, base);
  return out;
}

/// Complex polynomial p with its first two derivatives, Horner.
struct PolyValue {
  Complex p, dp, ddp;
};

inline PolyValue eval_with_derivatives(const std::vector<Complex>& c, Complex z) {
  PolyValue v{0.0, 0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    v.ddp = v.ddp * z + 2.0 * v.dp;
    v.dp = v.dp * z + v.p;
    v.p = v.p * z + *it;
  }
  return v;
}

/// Expanded coefficients of leading (z-a)^k (z-b)^m.
inline std::vector<Complex> expand_two_root(Complex a, Complex b, int k, int m, Complex leading) {
  std::vector<Complex> out{leading};
  const auto times_linear = [&](Complex root) {
    std::vector<Complex> next(out.size() + 1, 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i + 1] += out[i];
      next[i] -= root * out[i];
    }
    out = next;
  };
  for (int i = 0; i < k; ++i) times_linear(a);
  for (int i = 0; i < m; ++i) times_linear(b);
  return out;
}

/// Chebyshev's method from the textbook definition
///   C(z) = z - (1 + L/2) p/p',  L = p p'' / p'^2
/// on expanded coefficients.
inline Complex chebyshev_textbook(const std::vector<Complex>& coeffs, Complex z) {
  const PolyValue v = eval_with_derivatives(coeffs, z);
  const Complex L = v.p * v.ddp / (v.dp * v.dp);
  return z - (1.0 + 0.5 * L) * v.p / v.dp;
}

inline double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace test_support
