#pragma once

#include <optional>
#include <vector>

#include "cheb/chebyshev_map.hpp"

namespace cheb {

enum class Verdict { ToRoot0, ToRoot1, Undecided };

const char* to_string(Verdict verdict);

struct OrbitPolicy {
  double capture_radius = 1e-8;
  int max_iter = 2000;
  double pole_guard = 1e-14;
  bool keep_trace = false;

  /// capture_radius, shrunk if needed below min(e1, 1-e2, xi-e1)/4 so that
  /// the capture disks sit inside the real basin intervals of `map`.
  double effective_capture(const ChebyshevMap& map) const;
};

struct OrbitResult {
  Verdict verdict = Verdict::Undecided;
  int iterations = 0;
  XComplex terminal;
  /// Seed followed by every iterate, when requested.
  std::optional<std::vector<XComplex>> trace;
};

/// Iterates the map from z0 until it is captured by 0 or 1, reaches
/// infinity (the pole's image, a repelling fixed point, hence Undecided),
/// or runs out of iterations. For k == m a point on Re z = 1/2 is Undecided
/// at once: that line is invariant and lies in the Julia set.
OrbitResult classify_orbit(const ChebyshevMap& map, const XComplex& z0, const OrbitPolicy& policy = {});

/// Same, with the seed given in the pole-centred coordinate w = z - xi.
/// Iteration runs in that coordinate, which keeps the z -> 1 - z symmetry
/// of k == m maps exact.
OrbitResult classify_centered(const ChebyshevMap& map, Complex w0, const OrbitPolicy& policy = {});

enum class RealInterval { BelowZero, ZeroToE1, E1ToPole, PoleToE2, E2ToOne, AboveOne };

const char* to_string(RealInterval interval);

struct RealLineFacts {
  RealInterval interval = RealInterval::BelowZero;
  /// C(x) as a signed real (finite except at overflow).
  double value = 0.0;
  /// Sign of C(x) - x as computed.
  int sign = 0;
  /// Sign predicted by -x(x-1)E(x) / (2((k+m)x-k)^3) with E = c (x-e1)(x-e2).
  int predicted_sign = 0;
};

/// Throws BoundaryInput when x is within 1e-12 of 0, 1, e1, e2 or the pole.
RealLineFacts real_line_facts(const ChebyshevMap& map, double x);

/// Restriction of the k == m map to the line Re z = 1/2:
/// C(1/2 + iy) = 1/2 + i phi(y),
/// phi(y) = (16(2m-1)(4m-1)y^4 - 24 m y^2 - 1) / (128 m^2 y^3).
class LineDynamics {
 public:
  /// Throws std::invalid_argument for m < 1.
  explicit LineDynamics(int m);

  int m() const { return m_; }
  /// The unique positive zero of phi.
  double zeta() const { return zeta_; }
  double phi(double y) const;

 private:
  int m_;
  double zeta_;
};

/// Closed form of the positive zero of phi (quadratic in y^2).
double compute_zeta(int m);

/// Throws ZeroInput for |y| < 1e-300.
double phi_eval(const LineDynamics& line, double y);

/// Smallest n <= cap with phi^n(y) in (0, zeta]; nullopt when the cap is
/// hit. Throws DomainError unless y > zeta, std::invalid_argument if cap < 1.
std::optional<int> phi_return_time(const LineDynamics& line, double y, int cap);

}  // namespace cheb
