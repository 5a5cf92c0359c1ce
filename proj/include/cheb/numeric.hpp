#pragma once

// Extended complex numbers, real-coefficient polynomials and a simultaneous
// iteration root finder.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace cheb {

using Complex = std::complex<double>;

/// A point of the Riemann sphere: a finite complex number or the single
/// point at infinity.
class XComplex {
 public:
  constexpr XComplex() = default;
  /// Throws std::domain_error on NaN parts; infinite parts collapse to the
  /// point at infinity.
  XComplex(Complex value);  // NOLINT(google-explicit-constructor)
  XComplex(double re, double im = 0.0) : XComplex(Complex(re, im)) {}

  static XComplex infinity() {
    XComplex z;
    z.infinite_ = true;
    return z;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  /// Finite value; throws std::logic_error on infinity.
  Complex value() const;

  friend bool operator==(const XComplex& a, const XComplex& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  Complex value_{};
  bool infinite_ = false;
};

/// Real polynomial with ascending coefficients, trimmed so that the last
/// coefficient is nonzero (the zero polynomial has no coefficients).
class RealPoly {
 public:
  RealPoly() = default;
  /// Throws std::invalid_argument on NaN or infinite coefficients.
  explicit RealPoly(std::vector<double> coeffs);
  RealPoly(std::initializer_list<double> coeffs)
      : RealPoly(std::vector<double>(coeffs)) {}

  const std::vector<double>& coeffs() const { return coeffs_; }
  /// Degree of the zero polynomial is reported as 0.
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  double operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0.0; }
  double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

  friend bool operator==(const RealPoly&, const RealPoly&) = default;

 private:
  std::vector<double> coeffs_;
};

XComplex poly_eval(const RealPoly& p, const XComplex& z);
Complex poly_eval(const RealPoly& p, Complex z);
double poly_eval(const RealPoly& p, double x);

RealPoly poly_derivative(const RealPoly& p);

struct Root {
  Complex location;
  int multiplicity = 1;
};

struct RootSet {
  std::vector<Root> roots;
  /// max |p(r)| over the returned locations.
  double residual = 0.0;

  int total_multiplicity() const;
};

struct RootFinderOptions {
  /// Roots closer than this (relative to the largest root modulus, floored
  /// at 1) are merged into one root of higher multiplicity.
  double cluster_tol = 1e-8;
  int max_sweeps = 500;
};

/// All complex roots of p with multiplicities, via Aberth-Ehrlich iteration
/// followed by cluster merging and conjugate symmetrization. Throws
/// std::invalid_argument if deg p < 1 or tol <= 0, NoConvergence if the
/// sweep cap is hit before every correction drops below tol.
RootSet find_roots(const RealPoly& p, double tol, const RootFinderOptions& options = {});

}  // namespace cheb
