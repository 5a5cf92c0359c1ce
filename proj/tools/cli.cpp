#include "cheb/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cheb/errors.hpp"
#include "cheb/json_util.hpp"
#include "cheb/verify.hpp"

namespace cheb::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw std::invalid_argument("bad number '" + text + "' in " + what);
  return v;
}

int to_int(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || v < INT32_MIN || v > INT32_MAX)
    throw std::invalid_argument("bad integer '" + text + "' in " + what);
  return static_cast<int>(v);
}

std::string fmt9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << text;
  file.close();
  if (!file) throw IoError("failed writing " + path);
}

void add_km(CLI::App* cmd, int& k, int& m) {
  cmd->add_option("--k", k, "Multiplicity of the root at 0")->required();
  cmd->add_option("--m", m, "Multiplicity of the root at 1")->required();
}

nlohmann::json orbit_json(const OrbitResult& r) {
  nlohmann::json doc = {{"verdict", to_string(r.verdict)}, {"iterations", r.iterations},
                        {"terminal", xcomplex_json(r.terminal)}};
  if (r.trace) {
    nlohmann::json trace = nlohmann::json::array();
    for (const XComplex& z : *r.trace) trace.push_back(xcomplex_json(z));
    doc["trace"] = trace;
  }
  return doc;
}

nlohmann::json points_json(const ChebyshevMap& map) {
  nlohmann::json fixed = nlohmann::json::array();
  for (const FixedPointInfo& f : fixed_points(map)) {
    const nlohmann::json mult =
        f.multiplier.imag() == 0 ? nlohmann::json(round9(f.multiplier.real())) : complex_json(f.multiplier);
    fixed.push_back({{"location", xcomplex_json(f.location)},
                     {"kind", to_string(f.kind)},
                     {"multiplier", mult},
                     {"stability", to_string(f.stability)}});
  }
  const CriticalPointSet set = critical_points(map, 1e-12);
  nlohmann::json critical = nlohmann::json::array();
  critical.push_back({{"location", complex_json(set.pole)}, {"multiplicity", set.pole_multiplicity}, {"kind", "Pole"}});
  for (const Root& r : set.quartic_roots.roots)
    critical.push_back({{"location", complex_json(r.location)}, {"multiplicity", r.multiplicity}, {"kind", "RootOfF"}});
  return {{"k", map.k()}, {"m", map.m()}, {"fixed_points", fixed}, {"critical_points", critical}};
}

}  // namespace

Window parse_window(const std::string& bounds, const std::string& px) {
  const auto b = split(bounds, ':');
  if (b.size() != 4) throw std::invalid_argument("window must be remin:remax:immin:immax, got '" + bounds + "'");
  const auto p = split(px, 'x');
  if (p.size() != 2) throw std::invalid_argument("resolution must be WxH, got '" + px + "'");
  return Window(to_double(b[0], "window"), to_double(b[1], "window"), to_double(b[2], "window"),
                to_double(b[3], "window"), to_int(p[0], "resolution"), to_int(p[1], "resolution"));
}

std::vector<double> parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw std::invalid_argument("range must be a:b:n, got '" + text + "'");
  const double a = to_double(parts[0], "range");
  const double b = to_double(parts[1], "range");
  const int n = to_int(parts[2], "range");
  if (n < 1) throw std::invalid_argument("range needs n >= 1");
  if (n == 1 && a != b) throw std::invalid_argument("range with n = 1 needs a == b");
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) values[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return values;
}

Complex parse_point(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return {to_double(parts[0], "point"), 0.0};
  if (parts.size() != 2) throw std::invalid_argument("point must be RE,IM, got '" + text + "'");
  return {to_double(parts[0], "point"), to_double(parts[1], "point")};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamics of Chebyshev's method on z^k (z-1)^m", args.empty() ? "cheb" : args.front()};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cheb 1.0");

  int k = 1, m = 1;
  int max_iter = OrbitPolicy{}.max_iter;
  std::string window_text = "-1:2:-1.5:1.5", px_text = "800x800", out_path;

  CLI::App* render_cmd = app.add_subcommand("render", "Render the basins of 0 and 1 to a PPM image");
  add_km(render_cmd, k, m);
  render_cmd->add_option("--window", window_text, "remin:remax:immin:immax")->capture_default_str();
  render_cmd->add_option("--px", px_text, "Resolution WxH")->capture_default_str();
  render_cmd->add_option("--out", out_path, "Output PPM path")->required();
  render_cmd->add_option("--max-iter", max_iter, "Iteration cap per pixel")->capture_default_str();

  CLI::App* points_cmd = app.add_subcommand("points", "Fixed and critical points as JSON");
  add_km(points_cmd, k, m);

  std::string z0_text;
  bool trace = false;
  CLI::App* orbit_cmd = app.add_subcommand("orbit", "Classify one orbit");
  add_km(orbit_cmd, k, m);
  orbit_cmd->add_option("--z0", z0_text, "Seed RE,IM")->required();
  orbit_cmd->add_flag("--trace", trace, "Include every iterate");
  orbit_cmd->add_option("--max-iter", max_iter, "Iteration cap")->capture_default_str();

  double y = 0, return_y = 0;
  int cap = 100000;
  CLI::App* phi_cmd = app.add_subcommand("phi", "The map induced on Re z = 1/2 when k = m");
  phi_cmd->add_option("--m", m, "Common multiplicity")->required();
  auto* y_opt = phi_cmd->add_option("--y", y, "Evaluate phi at y");
  auto* zeta_opt = phi_cmd->add_flag("--zeta", "Positive zero of phi");
  auto* ret_opt = phi_cmd->add_option("--return-time", return_y, "Steps for y > zeta to fall into (0, zeta]");
  phi_cmd->add_option("--cap", cap, "Step cap for --return-time")->capture_default_str();
  y_opt->excludes(zeta_opt)->excludes(ret_opt);
  zeta_opt->excludes(ret_opt);

  std::string ys_text = "-2:2:41";
  double tol = 1e-10;
  CLI::App* boundary_cmd = app.add_subcommand("boundary", "Locate basin crossings along horizontal lines");
  add_km(boundary_cmd, k, m);
  boundary_cmd->add_option("--ys", ys_text, "Heights a:b:n")->capture_default_str();
  boundary_cmd->add_option("--tol", tol, "Bisection width")->capture_default_str();
  boundary_cmd->add_option("--out", out_path, "Output JSON path (default stdout)");

  SuiteOptions suite;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the check suite over a (k, m) grid");
  verify_cmd->add_option("--kmin", suite.k_min)->capture_default_str();
  verify_cmd->add_option("--kmax", suite.k_max)->capture_default_str();
  verify_cmd->add_option("--mmin", suite.m_min)->capture_default_str();
  verify_cmd->add_option("--mmax", suite.m_max)->capture_default_str();
  verify_cmd->add_option("--seed", suite.seed)->capture_default_str();
  verify_cmd->add_option("--out", out_path, "Output JSON path (default stdout)");

  std::vector<std::string> argv_tail(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (render_cmd->parsed()) {
      if (max_iter < 1) throw std::invalid_argument("--max-iter must be positive");
      const ChebyshevMap map = build_map(k, m);
      OrbitPolicy policy;
      policy.max_iter = max_iter;
      const BasinRaster raster = render(map, parse_window(window_text, px_text), policy);
      emit_ppm(raster, out_path);
      const BasinFractions f = basin_fractions(raster);
      const nlohmann::json doc = {{"to_root0", round9(f.to_root0)},
                                  {"to_root1", round9(f.to_root1)},
                                  {"undecided", round9(f.undecided)}};
      out << doc.dump() << "\n";
    } else if (points_cmd->parsed()) {
      out << points_json(build_map(k, m)).dump(2) << "\n";
    } else if (orbit_cmd->parsed()) {
      if (max_iter < 1) throw std::invalid_argument("--max-iter must be positive");
      const ChebyshevMap map = build_map(k, m);
      OrbitPolicy policy;
      policy.max_iter = max_iter;
      policy.keep_trace = trace;
      out << orbit_json(classify_orbit(map, parse_point(z0_text), policy)).dump(2) << "\n";
    } else if (phi_cmd->parsed()) {
      if (!*y_opt && !*zeta_opt && !*ret_opt)
        throw std::invalid_argument("phi needs one of --y, --zeta, --return-time");
      const LineDynamics line(m);
      if (*zeta_opt) {
        out << fmt9(line.zeta()) << "\n";
      } else if (*y_opt) {
        out << fmt9(phi_eval(line, y)) << "\n";
      } else {
        const auto n = phi_return_time(line, return_y, cap);
        if (!n) {
          err << "no return within " << cap << " steps\n";
          return kExitFailed;
        }
        out << *n << "\n";
      }
    } else if (boundary_cmd->parsed()) {
      const ChebyshevMap map = build_map(k, m);
      const std::string doc = boundary_to_json(probe_boundary(map, parse_range(ys_text), tol));
      if (out_path.empty())
        out << doc;
      else
        write_file(out_path, doc);
    } else if (verify_cmd->parsed()) {
      if (suite.k_max > 20 || suite.m_max > 20) throw std::invalid_argument("verify grid is limited to 1..20");
      const VerificationReport report = run_suite(suite);
      const std::string doc = report_to_json(report);
      if (out_path.empty()) {
        out << doc;
      } else {
        write_file(out_path, doc);
        int passed = 0;
        for (const CheckResult& r : report.results) {
          if (r.passed) {
            ++passed;
            continue;
          }
          out << "FAIL (" << r.k << "," << r.m << ") " << r.lemma_id << " " << r.name << ": "
              << r.witness.value_or("") << "\n";
        }
        out << passed << "/" << report.results.size() << " checks passed\n";
      }
      return report.all_passed() ? kExitOk : kExitFailed;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CoefficientOverflow& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ZeroInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitOk;
}

}  // namespace cheb::cli
