#pragma once

// Chebyshev's root-finding iteration for p(z) = z^k (z-1)^m and its affine
// conjugates.
//
// The iteration is the quartic rational map
//
//   C(z) = N(z) / (2 ((k+m) z - k)^3),   N(z) = A0 z^4 + A1 z^3 + A2 z^2 + A3 z
//
// with a single (triple) pole at xi = k/(k+m), super/attracting fixed points
// at the roots 0 and 1, a repelling fixed point at infinity and two
// repelling extraneous fixed points e1 < xi < e2 inside (0, 1).

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "cheb/numeric.hpp"

namespace cheb {

/// Largest admissible k + m; keeps every coefficient exact in 128-bit
/// integers.
inline constexpr long long kMaxDegree = 1'000'000;

class ChebyshevMap {
 public:
  int k() const { return k_; }
  int m() const { return m_; }
  int degree_sum() const { return k_ + m_; }

  /// N(z), ascending: [0, A3, A2, A1, A0].
  const RealPoly& numerator() const { return numerator_; }
  /// Numerator F of the derivative: C'(z) = F(z) / (2((k+m)z-k)^4).
  const RealPoly& derivative_numerator() const { return derivative_numerator_; }
  /// E(z); its roots are the extraneous fixed points.
  const RealPoly& extraneous_poly() const { return extraneous_poly_; }

  /// A0, A1, A2, A3 (leading first).
  const std::array<double, 4>& a_coeffs() const { return a_; }

  double pole() const { return pole_; }
  /// 2 (k+m)^3, the leading coefficient of the denominator.
  double denom_scale() const { return denom_scale_; }

  /// e1 < e2 from the closed form.
  std::pair<double, double> extraneous_points() const { return extraneous_; }

  double multiplier_at_zero() const;
  double multiplier_at_one() const;
  double multiplier_at_infinity() const;

  /// Map in the pole-centred coordinate w = z - xi:
  ///   w -> Ñ(w) / (2 (k+m)^3 w^3),  Ñ(w) = N(w + xi) - 2 (k+m)^3 xi w^3.
  /// For k == m the odd coefficients of Ñ vanish exactly, so the step is
  /// bit-exactly odd and conjugate-symmetric. Returns infinity only for
  /// |w| < kCentredPoleRadius, where the quotient would underflow; this chart
  /// resolves the pole far more finely than eval().
  XComplex step_centered(Complex w) const;
  const RealPoly& centered_numerator() const { return centered_; }

  friend ChebyshevMap build_map(int k, int m);

 private:
  int k_ = 1;
  int m_ = 1;
  RealPoly numerator_;
  RealPoly derivative_numerator_;
  RealPoly extraneous_poly_;
  RealPoly centered_;
  std::array<double, 4> a_{};
  double pole_ = 0.5;
  double denom_scale_ = 16.0;
  std::pair<double, double> extraneous_{};
};

/// Throws std::invalid_argument unless k >= 1, m >= 1, k + m <= kMaxDegree;
/// CoefficientOverflow if an exact coefficient leaves the 128-bit range.
ChebyshevMap build_map(int k, int m);

/// Beyond this modulus the map is replaced by its linear asymptote
/// z -> z / multiplier_at_infinity().
inline constexpr double kAsymptoticModulus = 1e150;
/// Inputs this close to the pole map to infinity.
inline constexpr double kPoleRadius = 1e-8;
inline constexpr double kCentredPoleRadius = 1e-50;

XComplex eval(const ChebyshevMap& map, const XComplex& z);

/// F(z) / (2((k+m)z-k)^4). Throws PoleInput within 1e-300 of the pole and
/// std::invalid_argument at infinity.
Complex eval_derivative(const ChebyshevMap& map, const XComplex& z);

enum class FixedPointKind { RootOfP, Extraneous, Infinity };
enum class Stability { SuperAttracting, Attracting, Neutral, Repelling };

const char* to_string(FixedPointKind kind);
const char* to_string(Stability stability);

Stability classify_multiplier(Complex multiplier);

struct FixedPointInfo {
  XComplex location;
  Complex multiplier;
  FixedPointKind kind = FixedPointKind::RootOfP;
  Stability stability = Stability::Repelling;
  /// For extraneous points: the value obtained by differentiating the map
  /// at the location (the closed form is stored in `multiplier`).
  std::optional<Complex> differentiated_multiplier;
};

/// Exactly five entries: 0, 1, infinity, e1, e2 (in that order). Throws
/// std::logic_error if the closed-form extraneous multipliers fail to match
/// the differentiated ones to 1e-8 relative.
std::vector<FixedPointInfo> fixed_points(const ChebyshevMap& map);

/// The two closed-form extraneous multipliers, '+' branch first.
std::pair<double, double> extraneous_multiplier_closed_form(int k, int m);

struct CriticalPointSet {
  double pole = 0.5;
  int pole_multiplicity = 2;
  RootSet quartic_roots;

  int total_multiplicity() const { return pole_multiplicity + quartic_roots.total_multiplicity(); }
};

CriticalPointSet critical_points(const ChebyshevMap& map, double tol);

/// p(z) = leading (z - a)^k (z - b)^m with a != b.
class TwoRootPolynomial {
 public:
  /// Throws std::invalid_argument on a == b, k < 1, m < 1 or leading == 0.
  TwoRootPolynomial(Complex root_a, Complex root_b, int k, int m, Complex leading = 1.0);

  Complex root_a() const { return a_; }
  Complex root_b() const { return b_; }
  int k() const { return k_; }
  int m() const { return m_; }
  Complex leading() const { return leading_; }

  /// One step of Chebyshev's method for this polynomial, evaluated from
  /// the logarithmic derivatives of the factored form.
  XComplex chebyshev_step(const XComplex& w) const;

 private:
  Complex a_;
  Complex b_;
  int k_;
  int m_;
  Complex leading_;
};

/// z -> alpha z + beta.
struct AffineMap {
  Complex alpha = 1.0;
  Complex beta = 0.0;

  XComplex apply(const XComplex& z) const;
  XComplex inverse(const XComplex& w) const;
};

struct Conjugation {
  ChebyshevMap map;
  /// Sends the normalised plane to the original one: T(0) = a, T(1) = b.
  AffineMap to_original;
};

Conjugation conjugate_from_general(const TwoRootPolynomial& q);

/// Newton's method for z^k (z-1)^m: z - z(z-1)/((k+m)z - k).
XComplex newton_map_eval(int k, int m, const XComplex& z);

}  // namespace cheb
