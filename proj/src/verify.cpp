#include "cheb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cheb/errors.hpp"
#include "cheb/json_util.hpp"
#include "cheb/parallel.hpp"

namespace cheb {

bool VerificationReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string fmt(Complex z) { return "(" + fmt(z.real()) + "," + fmt(z.imag()) + ")"; }

// Counts samples and keeps the first failure.
class Tally {
 public:
  void expect(bool ok, const std::function<std::string()>& witness) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (!witness_) witness_ = witness();
  }
  void fail(const std::string& witness) {
    ++total_;
    ++failed_;
    if (!witness_) witness_ = witness;
  }
  int total() const { return total_; }
  bool ok() const { return failed_ == 0; }
  const std::optional<std::string>& witness() const { return witness_; }
  std::string summary() const { return std::to_string(total_ - failed_) + "/" + std::to_string(total_) + " passed"; }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::optional<std::string> witness_;
};

struct Context {
  const ChebyshevMap& map;
  const SuiteOptions& options;
  std::mt19937_64 rng;

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
};

CheckResult make(const char* id, const char* name, const char* anchor, const Context& ctx, const Tally& t,
                 std::string detail) {
  CheckResult r;
  r.lemma_id = id;
  r.name = name;
  r.anchor = anchor;
  r.k = ctx.map.k();
  r.m = ctx.map.m();
  r.passed = t.ok();
  r.witness = t.witness();
  r.detail = t.summary() + (detail.empty() ? "" : "; " + detail);
  return r;
}

double real_value(const ChebyshevMap& map, double x) { return eval(map, x).value().real(); }

CheckResult check_f_sign(Context& ctx) {
  Tally t;
  const RealPoly& f = ctx.map.derivative_numerator();
  // F(1 + x) has constant term m^2 (2m^2 - 3m + 1), zero for m = 1.
  const double floor_right = ctx.map.m() >= 2 ? 1.0 : 0.0;
  for (int i = 0; i < ctx.options.samples_per_interval; ++i) {
    const double x = -ctx.uniform(1e-9, 100);
    const double v = poly_eval(f, x);
    t.expect(v > 0, [&] { return "F(" + fmt(x) + ")=" + fmt(v); });
    const double y = ctx.uniform(1e-9, 100);
    const double w = poly_eval(f, 1 + y);
    t.expect(w > floor_right, [&] { return "F(1+" + fmt(y) + ")=" + fmt(w); });
  }
  return make("a", "F-sign", "F(x) > 0 for x < 0; F(1+x) > 1 for x > 0 when m >= 2, F(1+x) > 0 when m = 1", ctx,
              t, "");
}

CheckResult check_derivative_outside(Context& ctx) {
  Tally t;
  for (int i = 0; i < ctx.options.samples_per_interval; ++i) {
    for (double x : {-ctx.uniform(1e-6, 100), 1 + ctx.uniform(1e-6, 100)}) {
      const Complex d = eval_derivative(ctx.map, x);
      t.expect(d.real() > 0 && d.imag() == 0, [&] { return "C'(" + fmt(x) + ")=" + fmt(d.real()); });
    }
  }
  return make("b", "derivative-positive", "C'(x) > 0 on (-inf, 0) and (1, inf)", ctx, t, "");
}

// Five-point central difference of C on the real line.
double real_derivative(const ChebyshevMap& map, double x, double h) {
  return (-real_value(map, x + 2 * h) + 8 * real_value(map, x + h) - 8 * real_value(map, x - h) +
          real_value(map, x - 2 * h)) /
         (12 * h);
}

CheckResult check_extraneous(Context& ctx) {
  Tally t;
  const auto [e1, e2] = ctx.map.extraneous_points();
  const double xi = ctx.map.pole();
  t.expect(0 < e1 && e1 < xi && xi < e2 && e2 < 1,
           [&] { return "e1=" + fmt(e1) + " xi=" + fmt(xi) + " e2=" + fmt(e2); });
  std::string detail;
  try {
    const auto fps = fixed_points(ctx.map);
    for (int i = 3; i < 5; ++i) {
      const double e = fps[i].location.value().real();
      const double closed = fps[i].multiplier.real();
      const double analytic = eval_derivative(ctx.map, e).real();
      const double h = 1e-3 * std::abs(e - xi);
      const double numeric = real_derivative(ctx.map, e, h);
      t.expect(std::abs(closed) > 1, [&] { return "|mult(" + fmt(e) + ")|=" + fmt(closed); });
      t.expect(std::abs(closed - analytic) <= ctx.options.fd_tol * std::abs(analytic),
               [&] { return "closed " + fmt(closed) + " vs C' " + fmt(analytic); });
      t.expect(std::abs(closed - numeric) <= ctx.options.fd_tol * std::abs(numeric),
               [&] { return "closed " + fmt(closed) + " vs difference " + fmt(numeric); });
      t.expect(std::abs(real_value(ctx.map, e) - e) <= 1e-9 * (1 + e),
               [&] { return "C(" + fmt(e) + ")=" + fmt(real_value(ctx.map, e)); });
    }
    detail = "e1=" + fmt(e1) + " e2=" + fmt(e2) + " mult(e1)=" + fmt(fps[3].multiplier.real()) +
             " mult(e2)=" + fmt(fps[4].multiplier.real()) + " mult(0)=" + fmt(fps[0].multiplier.real()) +
             " mult(1)=" + fmt(fps[1].multiplier.real());
  } catch (const std::logic_error& ex) {
    t.fail(ex.what());
  }
  return make("c", "extraneous-fixed-points", "0 < e1 < k/(k+m) < e2 < 1 and |C'(e1)|, |C'(e2)| > 1", ctx, t,
              detail);
}

CheckResult check_sign_table(Context& ctx) {
  Tally t;
  const auto [e1, e2] = ctx.map.extraneous_points();
  const double xi = ctx.map.pole();
  const double spans[6][2] = {{-100, 0}, {0, e1}, {e1, xi}, {xi, e2}, {e2, 1}, {1, 100}};
  const int expected[6] = {1, -1, 1, -1, 1, -1};
  for (int s = 0; s < 6; ++s) {
    const double pad = 1e-6 * (spans[s][1] - spans[s][0]);
    for (int i = 0; i < ctx.options.samples_per_interval; ++i) {
      const double x = ctx.uniform(spans[s][0] + pad, spans[s][1] - pad);
      const RealLineFacts f = real_line_facts(ctx.map, x);
      t.expect(static_cast<int>(f.interval) == s && f.sign == expected[s] && f.predicted_sign == expected[s], [&] {
        return "x=" + fmt(x) + " sign=" + std::to_string(f.sign) + " predicted=" + std::to_string(f.predicted_sign);
      });
    }
  }
  return make("d", "sign-table", "C(x) - x = -x(x-1)E(x) / (2((k+m)x-k)^3)", ctx, t,
              "signs + - + - + - on (-inf,0),(0,e1),(e1,xi),(xi,e2),(e2,1),(1,inf)");
}

CheckResult check_real_mapping(Context& ctx) {
  Tally t;
  for (int i = 0; i < ctx.options.samples_per_interval; ++i) {
    const double x = -ctx.uniform(1e-6, 100);
    const double cx = real_line_facts(ctx.map, x).value;
    t.expect(x < cx && cx < 0, [&] { return "C(" + fmt(x) + ")=" + fmt(cx); });
    const double y = 1 + ctx.uniform(1e-6, 100);
    const double cy = real_line_facts(ctx.map, y).value;
    t.expect(1 < cy && cy < y, [&] { return "C(" + fmt(y) + ")=" + fmt(cy); });
  }
  return make("e", "real-mapping", "x < C(x) < 0 for x < 0 and 1 < C(x) < x for x > 1", ctx, t, "");
}

CheckResult check_basin_intervals(Context& ctx) {
  Tally t;
  const auto [e1, e2] = ctx.map.extraneous_points();
  for (int i = 0; i < ctx.options.orbit_seeds; ++i) {
    const double left = e1 - (e1 + 10) * ctx.uniform(1e-6, 1);
    const OrbitResult a = classify_orbit(ctx.map, left);
    t.expect(a.verdict == Verdict::ToRoot0,
             [&] { return "z0=" + fmt(left) + " -> " + to_string(a.verdict); });
    const double right = e2 + (10 - e2) * ctx.uniform(1e-6, 1);
    const OrbitResult b = classify_orbit(ctx.map, right);
    t.expect(b.verdict == Verdict::ToRoot1,
             [&] { return "z0=" + fmt(right) + " -> " + to_string(b.verdict); });
  }
  return make("f", "basin-intervals", "(-inf, e1) lies in the basin of 0 and (e2, inf) in the basin of 1", ctx, t,
              "");
}

CheckResult check_critical_set(Context& ctx, const CriticalPointSet& set) {
  Tally t;
  t.expect(set.total_multiplicity() == 6,
           [&] { return "total multiplicity " + std::to_string(set.total_multiplicity()); });
  for (const Root& r : set.quartic_roots.roots) {
    const Complex z = r.location;
    const bool excluded = z.imag() == 0 && (z.real() < -1e-12 || z.real() > 1 + 1e-12);
    t.expect(!excluded, [&] { return "real critical point " + fmt(z); });
    const bool mirrored = std::any_of(set.quartic_roots.roots.begin(), set.quartic_roots.roots.end(),
                                      [&](const Root& s) {
                                        return s.multiplicity == r.multiplicity && s.location == std::conj(z);
                                      });
    t.expect(mirrored, [&] { return "no conjugate for " + fmt(z); });
  }
  std::string detail = "roots of F:";
  for (const Root& r : set.quartic_roots.roots) detail += " " + fmt(r.location) + "x" + std::to_string(r.multiplicity);
  return make("g", "critical-set", "critical points: k/(k+m) twice and the roots of F; none in (-inf,0) or (1,inf)",
              ctx, t, detail);
}

CheckResult check_basin_split(Context& ctx) {
  Tally t;
  BasinSplit split;
  int used = 0;
  for (int side : ctx.options.basin_resolutions) {
    used = side;
    const BasinRaster raster = render(ctx.map, Window(-1, 2, -1.5, 1.5, side, side));
    split = immediate_basin_split(ctx.map, raster);
    if (!split.borderline && split.count0 == 2 && split.count1 == 2) break;
  }
  t.expect(split.count0 == 2 && split.count1 == 2, [&] {
    return "split (" + std::to_string(split.count0) + "," + std::to_string(split.count1) + ") at " +
           std::to_string(used) + "px";
  });
  return make("h", "immediate-basin-critical-points",
              "each immediate basin holds two roots of F, counted with multiplicity", ctx, t,
              "split (" + std::to_string(split.count0) + "," + std::to_string(split.count1) + ") at " +
                  std::to_string(used) + "x" + std::to_string(used) + " over [-1,2]x[-1.5,1.5]" +
                  (split.borderline ? ", borderline" : ""));
}

CheckResult check_line(Context& ctx) {
  Tally t;
  const int m = ctx.map.m();
  const LineDynamics line(m);
  const double zeta = line.zeta();
  t.expect(std::abs(line.phi(zeta)) <= 1e-12, [&] { return "phi(zeta)=" + fmt(line.phi(zeta)); });

  for (int i = 0; i < ctx.options.samples_per_interval; ++i) {
    const double y = std::pow(10.0, ctx.uniform(-3, 3));
    t.expect(line.phi(-y) == -line.phi(y), [&] { return "phi(-y) != -phi(y) at y=" + fmt(y); });
    t.expect(line.phi(y) < y, [&] { return "phi(" + fmt(y) + ")=" + fmt(line.phi(y)); });
    const Complex c = eval(ctx.map, Complex(0.5, y)).value();
    const double scale = std::max(1.0, std::abs(c));
    t.expect(std::abs(c.real() - 0.5) <= 1e-10 * scale && std::abs(c.imag() - line.phi(y)) <= 1e-10 * scale,
             [&] { return "C(1/2+i" + fmt(y) + ")=" + fmt(c); });
  }
  double prev = line.phi(1e-3);
  for (double y = 1e-3 * 1.01; y < 1e3; y *= 1.01) {
    const double v = line.phi(y);
    t.expect(v > prev, [&] { return "phi not increasing at y=" + fmt(y); });
    prev = v;
  }
  for (int i = 0; i < ctx.options.orbit_seeds; ++i) {
    const double y = zeta * (1 + std::pow(10.0, ctx.uniform(-6, 2)));
    const auto n = phi_return_time(line, y, 100000);
    t.expect(n.has_value(), [&] { return "no return from y=" + fmt(y); });
    double cur = y;
    for (int step = 1; n && step < *n; ++step) {
      const double next = line.phi(cur);
      t.expect(next < cur, [&] { return "phi orbit of " + fmt(y) + " not decreasing"; });
      cur = next;
    }
  }

  std::vector<double> heights;
  const int nh = ctx.options.boundary_heights;
  for (int i = 0; i < nh; ++i) heights.push_back(nh == 1 ? 0.0 : -2.0 + 4.0 * i / (nh - 1));
  double deviation = 0;
  try {
    const BoundaryEstimate est = probe_boundary(ctx.map, heights, ctx.options.boundary_tol);
    deviation = est.max_deviation_from_L;
    for (const Complex& p : est.points)
      t.expect(std::abs(p.real() - 0.5) <= ctx.options.boundary_tol, [&] { return "crossing at " + fmt(p); });
  } catch (const NoCrossing& ex) {
    t.fail(ex.what());
  }
  return make("i", "line-dynamics",
              "phi odd, increasing, phi(y) < y for y > 0, phi(zeta) = 0, orbits above zeta return to (0, zeta]; "
              "basin boundary on Re z = 1/2",
              ctx, t, "zeta=" + fmt(zeta) + " max boundary deviation " + fmt(deviation));
}

CheckResult check_multipliers(Context& ctx) {
  Tally t;
  const ChebyshevMap& map = ctx.map;
  const double k = map.k(), m = map.m(), d = k + m;
  const double at0 = (k - 1) * (2 * k - 1) / (2 * k * k);
  const double at1 = (m - 1) * (2 * m - 1) / (2 * m * m);
  const double at_inf = 2 * d * d / (2 * d * d - 3 * d + 1);
  const double tol = ctx.options.multiplier_tol;
  const auto close = [](double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); };

  t.expect(map.multiplier_at_zero() == at0, [&] { return "multiplier at 0 " + fmt(map.multiplier_at_zero()); });
  t.expect(map.multiplier_at_one() == at1, [&] { return "multiplier at 1 " + fmt(map.multiplier_at_one()); });
  t.expect(close(map.multiplier_at_infinity(), at_inf, 1e-15),
           [&] { return "multiplier at inf " + fmt(map.multiplier_at_infinity()); });
  const double c0 = eval_derivative(map, 0.0).real();
  const double c1 = eval_derivative(map, 1.0).real();
  t.expect(close(c0, at0, tol), [&] { return "C'(0)=" + fmt(c0); });
  t.expect(close(c1, at1, tol), [&] { return "C'(1)=" + fmt(c1); });

  const double h = 1e-4 * std::min(map.pole(), 1 - map.pole());
  const double n0 = real_derivative(map, 0.0, h);
  const double n1 = real_derivative(map, 1.0, h);
  t.expect(close(n0, at0, ctx.options.fd_tol), [&] { return "difference at 0 " + fmt(n0); });
  t.expect(close(n1, at1, ctx.options.fd_tol), [&] { return "difference at 1 " + fmt(n1); });
  // At infinity: derivative of u -> 1/C(1/u) at u = 0, by a central difference.
  const double u = 1e-6;
  const double g_plus = 1 / real_value(map, 1 / u);
  const double g_minus = 1 / real_value(map, -1 / u);
  const double n_inf = (g_plus - g_minus) / (2 * u);
  t.expect(close(n_inf, at_inf, 1e-8), [&] { return "difference at inf " + fmt(n_inf); });
  return make("j", "root-and-infinity-multipliers",
              "C'(0) = (k-1)(2k-1)/(2k^2), C'(1) = (m-1)(2m-1)/(2m^2), multiplier at inf 2d^2/(2d^2-3d+1)", ctx, t,
              "C'(0)=" + fmt(c0) + " C'(1)=" + fmt(c1) + " inf=" + fmt(n_inf));
}

CheckResult check_k1_form(Context& ctx) {
  Tally t;
  const double m = ctx.map.m();
  const double want[5] = {0, 0, 9 * m * m + 3 * m, -4 * m * (m + 1) * (2 * m + 1), m * (m + 1) * (m + 1) * (2 * m + 1)};
  const RealPoly& f = ctx.map.derivative_numerator();
  for (std::size_t i = 0; i < 5; ++i)
    t.expect(std::abs(f[i] - want[i]) <= 1e-9 * std::max(1.0, std::abs(want[i])),
             [&] { return "coefficient z^" + std::to_string(i) + ": " + fmt(f[i]) + " vs " + fmt(want[i]); });
  const auto [e1, e2] = ctx.map.extraneous_points();
  const double r = std::sqrt(m / (3 * m + 2));
  t.expect(std::abs(e1 - (1 - r) / (m + 1)) <= 1e-10 && std::abs(e2 - (1 + r) / (m + 1)) <= 1e-10,
           [&] { return "e1=" + fmt(e1) + " e2=" + fmt(e2); });
  return make("k", "k1-factorization",
              "k = 1: F = z^2 (m(m+1)^2(2m+1) z^2 - 4m(m+1)(2m+1) z + 9m^2 + 3m), e = (1 +- sqrt(m/(3m+2)))/(m+1)",
              ctx, t, "");
}

std::vector<CheckResult> run_pair(int k, int m, const SuiteOptions& options) {
  const ChebyshevMap map = build_map(k, m);
  std::vector<CheckResult> out;
  const auto context = [&](int check) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(check)};
    return Context{map, options, std::mt19937_64(seq)};
  };
  const auto guarded = [&](int check, const char* id, const std::function<CheckResult(Context&)>& fn) {
    Context ctx = context(check);
    try {
      out.push_back(fn(ctx));
    } catch (const std::exception& ex) {
      CheckResult r;
      r.lemma_id = id;
      r.name = "exception";
      r.k = k;
      r.m = m;
      r.witness = ex.what();
      r.detail = std::string("check threw: ") + ex.what();
      out.push_back(r);
    }
  };
  guarded(0, "a", check_f_sign);
  guarded(1, "b", check_derivative_outside);
  guarded(2, "c", check_extraneous);
  guarded(3, "d", check_sign_table);
  guarded(4, "e", check_real_mapping);
  guarded(5, "f", check_basin_intervals);
  guarded(6, "g", [&](Context& ctx) { return check_critical_set(ctx, critical_points(map, 1e-12)); });
  guarded(7, "h", check_basin_split);
  if (k == m) guarded(8, "i", check_line);
  guarded(9, "j", check_multipliers);
  if (k == 1) guarded(10, "k", check_k1_form);
  return out;
}

}  // namespace

VerificationReport run_suite(const SuiteOptions& options) {
  if (options.k_min < 1 || options.m_min < 1 || options.k_max < options.k_min || options.m_max < options.m_min)
    throw std::invalid_argument("run_suite: empty or non-positive (k, m) range");
  if (options.basin_resolutions.empty()) throw std::invalid_argument("run_suite: no basin resolutions");

  std::vector<std::pair<int, int>> pairs;
  for (int k = options.k_min; k <= options.k_max; ++k)
    for (int m = options.m_min; m <= options.m_max; ++m) pairs.emplace_back(k, m);

  std::vector<std::vector<CheckResult>> per_pair(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) { per_pair[i] = run_pair(pairs[i].first, pairs[i].second, options); });

  VerificationReport report;
  report.options = options;
  for (auto& results : per_pair)
    for (auto& r : results) report.results.push_back(std::move(r));
  return report;
}

std::string report_to_json(const VerificationReport& report) {
  const SuiteOptions& o = report.options;
  nlohmann::json results = nlohmann::json::array();
  for (const CheckResult& r : report.results) {
    nlohmann::json entry = {{"lemma_id", r.lemma_id}, {"name", r.name},       {"anchor", r.anchor},
                            {"params", {{"k", r.k}, {"m", r.m}}},  {"passed", r.passed}, {"detail", r.detail}};
    if (r.witness) entry["witness"] = *r.witness;
    results.push_back(entry);
  }
  const nlohmann::json doc = {
      {"grid", {{"k", {o.k_min, o.k_max}}, {"m", {o.m_min, o.m_max}}}},
      {"seed", o.seed},
      {"tolerances",
       {{"boundary", round9(o.boundary_tol)},
        {"multiplier", round9(o.multiplier_tol)},
        {"finite_difference", round9(o.fd_tol)}}},
      {"samples",
       {{"per_interval", o.samples_per_interval},
        {"orbit_seeds", o.orbit_seeds},
        {"boundary_heights", o.boundary_heights},
        {"basin_resolutions", o.basin_resolutions}}},
      {"results", results},
      {"passed", report.all_passed()},
  };
  return doc.dump(2) + "\n";
}

BasinSplit immediate_basin_split(const ChebyshevMap& map, const BasinRaster& raster) {
  const Window& w = raster.window;
  const auto locate = [&](Complex z) {
    const auto px = w.pixel_of(z);
    if (!px) throw CoverageError("immediate_basin_split: " + fmt(z) + " lies outside the window");
    return *px;
  };
  const CriticalPointSet critical = critical_points(map, 1e-12);
  std::vector<std::pair<std::pair<int, int>, int>> marks;
  for (const Root& r : critical.quartic_roots.roots) marks.push_back({locate(r.location), r.multiplicity});

  const int width = w.width(), height = w.height();
  const auto component = [&](Complex seed, Verdict verdict) {
    std::vector<char> inside(static_cast<std::size_t>(width) * height, 0);
    const auto [c0, r0] = locate(seed);
    if (raster.at(c0, r0).verdict != verdict) return inside;
    std::vector<std::pair<int, int>> stack{{c0, r0}};
    inside[static_cast<std::size_t>(r0) * width + c0] = 1;
    while (!stack.empty()) {
      const auto [c, r] = stack.back();
      stack.pop_back();
      const std::pair<int, int> next[4] = {{c - 1, r}, {c + 1, r}, {c, r - 1}, {c, r + 1}};
      for (const auto& [nc, nr] : next) {
        if (nc < 0 || nr < 0 || nc >= width || nr >= height) continue;
        char& flag = inside[static_cast<std::size_t>(nr) * width + nc];
        if (flag || raster.at(nc, nr).verdict != verdict) continue;
        flag = 1;
        stack.emplace_back(nc, nr);
      }
    }
    return inside;
  };
  const auto basin0 = component(0.0, Verdict::ToRoot0);
  const auto basin1 = component(1.0, Verdict::ToRoot1);

  BasinSplit split;
  for (const auto& [px, mult] : marks) {
    const auto [c, r] = px;
    const std::size_t idx = static_cast<std::size_t>(r) * width + c;
    if (basin0[idx]) split.count0 += mult;
    if (basin1[idx]) split.count1 += mult;
    const Verdict v = raster.at(c, r).verdict;
    const std::pair<int, int> next[4] = {{c - 1, r}, {c + 1, r}, {c, r - 1}, {c, r + 1}};
    for (const auto& [nc, nr] : next)
      if (nc >= 0 && nr >= 0 && nc < width && nr < height && raster.at(nc, nr).verdict != v) split.borderline = true;
    if (v == Verdict::Undecided) split.borderline = true;
  }
  return split;
}

}  // namespace cheb
