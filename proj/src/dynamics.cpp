#include "cheb/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cheb/errors.hpp"

namespace cheb {

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::ToRoot0: return "ToRoot0";
    case Verdict::ToRoot1: return "ToRoot1";
    case Verdict::Undecided: return "Undecided";
  }
  return "?";
}

double OrbitPolicy::effective_capture(const ChebyshevMap& map) const {
  const auto [e1, e2] = map.extraneous_points();
  const double bound = std::min({e1, 1.0 - e2, map.pole() - e1}) / 4.0;
  return std::min(capture_radius, 0.99 * bound);
}

OrbitResult classify_centered(const ChebyshevMap& map, Complex w0, const OrbitPolicy& policy) {
  const double xi = map.pole();
  const double capture = policy.effective_capture(map);
  const Complex root0 = -xi;
  const Complex root1 = 1.0 - xi;
  const bool on_line_is_julia = map.k() == map.m();

  OrbitResult result;
  if (policy.keep_trace) result.trace.emplace();
  const auto record = [&](const XComplex& w) {
    if (result.trace) result.trace->push_back(w.is_infinite() ? w : XComplex(w.value() + xi));
  };

  Complex w = w0;
  record(XComplex(w));
  for (int it = 0;; ++it) {
    result.iterations = it;
    result.terminal = XComplex(w + xi);
    if (on_line_is_julia && w.real() == 0.0) return result;
    if (std::abs(w - root0) <= capture) {
      result.verdict = Verdict::ToRoot0;
      return result;
    }
    if (std::abs(w - root1) <= capture) {
      result.verdict = Verdict::ToRoot1;
      return result;
    }
    if (it == policy.max_iter) return result;

    const XComplex next = std::abs(w) <= policy.pole_guard ? XComplex::infinity() : map.step_centered(w);
    record(next);
    if (next.is_infinite()) {
      // The pole maps to infinity, which is fixed and repelling: Julia set.
      result.iterations = it + 1;
      result.terminal = next;
      return result;
    }
    w = next.value();
  }
}

OrbitResult classify_orbit(const ChebyshevMap& map, const XComplex& z0, const OrbitPolicy& policy) {
  if (z0.is_infinite()) {
    OrbitResult result;
    result.terminal = z0;
    if (policy.keep_trace) result.trace = std::vector<XComplex>{z0};
    return result;
  }
  return classify_centered(map, z0.value() - map.pole(), policy);
}

const char* to_string(RealInterval interval) {
  switch (interval) {
    case RealInterval::BelowZero: return "(-inf,0)";
    case RealInterval::ZeroToE1: return "(0,e1)";
    case RealInterval::E1ToPole: return "(e1,xi)";
    case RealInterval::PoleToE2: return "(xi,e2)";
    case RealInterval::E2ToOne: return "(e2,1)";
    case RealInterval::AboveOne: return "(1,inf)";
  }
  return "?";
}

namespace {

int sign_of(double v) { return (v > 0) - (v < 0); }

}  // namespace

RealLineFacts real_line_facts(const ChebyshevMap& map, double x) {
  const auto [e1, e2] = map.extraneous_points();
  const double xi = map.pole();
  for (double excluded : {0.0, 1.0, e1, e2, xi})
    if (std::abs(x - excluded) <= 1e-12)
      throw BoundaryInput("real_line_facts: x is a fixed point or the pole");

  RealLineFacts facts;
  if (x < 0)
    facts.interval = RealInterval::BelowZero;
  else if (x < e1)
    facts.interval = RealInterval::ZeroToE1;
  else if (x < xi)
    facts.interval = RealInterval::E1ToPole;
  else if (x < e2)
    facts.interval = RealInterval::PoleToE2;
  else if (x < 1)
    facts.interval = RealInterval::E2ToOne;
  else
    facts.interval = RealInterval::AboveOne;

  // Signed real evaluation: eval() would send the pole's neighbourhood to the
  // unsigned point at infinity.
  const double den = map.degree_sum() * x - map.k();
  if (std::abs(x) <= 1.0) {
    facts.value = poly_eval(map.numerator(), x) / (2.0 * den * den * den);
  } else {
    const auto& a = map.a_coeffs();
    const double v = 1.0 / x;
    const double dv = map.degree_sum() - map.k() * v;
    facts.value = x * (((a[3] * v + a[2]) * v + a[1]) * v + a[0]) / (2.0 * dv * dv * dv);
  }
  facts.sign = sign_of(facts.value - x);
  facts.predicted_sign = -sign_of(x) * sign_of(x - 1.0) * sign_of(x - e1) * sign_of(x - e2) * sign_of(den);
  return facts;
}

double compute_zeta(int m) {
  if (m < 1) throw std::invalid_argument("compute_zeta: m must be >= 1");
  // 16(2m-1)(4m-1) t^2 - 24 m t - 1 = 0 with t = y^2.
  const double mm = m;
  const double a = 16.0 * (2 * mm - 1) * (4 * mm - 1);
  const double t = (24.0 * mm + std::sqrt(576.0 * mm * mm + 4.0 * a)) / (2.0 * a);
  return std::sqrt(t);
}

LineDynamics::LineDynamics(int m) : m_(m), zeta_(compute_zeta(m)) {}

double LineDynamics::phi(double y) const {
  const double mm = m_;
  const double lead = 16.0 * (2 * mm - 1) * (4 * mm - 1);
  if (std::abs(y) <= 1.0) {
    const double y2 = y * y;
    return ((lead * y2 - 24.0 * mm) * y2 - 1.0) / (128.0 * mm * mm * (y2 * y));
  }
  // Split form: no y^4 overflow for large |y|.
  const double v = 1.0 / y;
  return (lead * y - 24.0 * mm * v - v * v * v) / (128.0 * mm * mm);
}

double phi_eval(const LineDynamics& line, double y) {
  if (std::abs(y) < 1e-300) throw ZeroInput("phi_eval: y must be nonzero");
  return line.phi(y);
}

std::optional<int> phi_return_time(const LineDynamics& line, double y, int cap) {
  if (cap < 1) throw std::invalid_argument("phi_return_time: cap must be >= 1");
  if (!(y > line.zeta())) throw DomainError("phi_return_time: y must exceed zeta");
  double current = y;
  for (int n = 1; n <= cap; ++n) {
    current = line.phi(current);
    if (current > 0.0 && current <= line.zeta()) return n;
  }
  return std::nullopt;
}

}  // namespace cheb
