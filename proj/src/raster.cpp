#include "cheb/raster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "cheb/errors.hpp"
#include "cheb/json_util.hpp"
#include "cheb/parallel.hpp"

namespace cheb {

Window::Window(double re_min, double re_max, double im_min, double im_max, int width, int height)
    : re_min_(re_min), re_max_(re_max), im_min_(im_min), im_max_(im_max), width_(width), height_(height) {
  if (!(re_min < re_max) || !(im_min < im_max))
    throw std::invalid_argument("Window: empty or inverted range");
  if (!std::isfinite(re_max - re_min) || !std::isfinite(im_max - im_min))
    throw std::invalid_argument("Window: non-finite range");
  if (width < 1 || height < 1) throw std::invalid_argument("Window: pixel counts must be positive");
}

Complex Window::midpoint() const { return {0.5 * (re_min_ + re_max_), 0.5 * (im_min_ + im_max_)}; }

Complex Window::offset(int col, int row) const {
  const double half_re = 0.5 * (re_max_ - re_min_);
  const double half_im = 0.5 * (im_max_ - im_min_);
  return {half_re * (2 * col + 1 - width_) / width_, half_im * (height_ - 2 * row - 1) / height_};
}

std::optional<std::pair<int, int>> Window::pixel_of(Complex z) const {
  if (z.real() < re_min_ || z.real() > re_max_ || z.imag() < im_min_ || z.imag() > im_max_) return std::nullopt;
  const int col = std::min(width_ - 1, static_cast<int>(std::floor((z.real() - re_min_) / step_re())));
  const int row = std::min(height_ - 1, static_cast<int>(std::floor((im_max_ - z.imag()) / step_im())));
  return std::pair{col, row};
}

BasinRaster render(const ChebyshevMap& map, const Window& window, const OrbitPolicy& policy) {
  if (window.width() < kMinRenderPixels || window.height() < kMinRenderPixels)
    throw std::invalid_argument("render: window must be at least 8x8 pixels");
  BasinRaster raster{window, map.k(), map.m(), {}};
  raster.cells.resize(static_cast<std::size_t>(window.width()) * window.height());

  OrbitPolicy quiet = policy;
  quiet.keep_trace = false;
  // Seeds are formed in the pole-centred coordinate directly, so mirror
  // pixels of a window centred on the pole get exactly opposite seeds.
  const Complex base = window.midpoint() - map.pole();
  parallel_for(static_cast<std::size_t>(window.height()), [&](std::size_t r) {
    const int row = static_cast<int>(r);
    for (int col = 0; col < window.width(); ++col) {
      const OrbitResult orbit = classify_centered(map, base + window.offset(col, row), quiet);
      raster.at(col, row) = {orbit.verdict, orbit.iterations};
    }
  });
  return raster;
}

Rgb cell_color(const Cell& cell) {
  if (cell.verdict == Verdict::Undecided) return {0, 0, 0};
  const double shade = 1.0 - 0.6 * std::min(cell.iterations, 60) / 60.0;
  const auto channel = [shade](int base) { return static_cast<std::uint8_t>(std::lround(base * shade)); };
  if (cell.verdict == Verdict::ToRoot0) return {channel(30), channel(60), channel(200)};
  return {channel(230), channel(200), channel(40)};
}

std::string encode_ppm(const BasinRaster& raster) {
  std::string out = "P6\n" + std::to_string(raster.window.width()) + " " +
                    std::to_string(raster.window.height()) + "\n255\n";
  out.reserve(out.size() + raster.cells.size() * 3);
  for (const Cell& cell : raster.cells) {
    const Rgb c = cell_color(cell);
    out.push_back(static_cast<char>(c.r));
    out.push_back(static_cast<char>(c.g));
    out.push_back(static_cast<char>(c.b));
  }
  return out;
}

void emit_ppm(const BasinRaster& raster, const std::string& path) {
  if (path.empty()) throw IoError("emit_ppm: empty path");
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("emit_ppm: cannot open " + path);
  const std::string bytes = encode_ppm(raster);
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  file.close();
  if (!file) throw IoError("emit_ppm: write failed for " + path);
}

BasinFractions basin_fractions(const BasinRaster& raster) {
  BasinFractions f;
  if (raster.cells.empty()) return f;
  for (const Cell& cell : raster.cells) {
    switch (cell.verdict) {
      case Verdict::ToRoot0: f.to_root0 += 1; break;
      case Verdict::ToRoot1: f.to_root1 += 1; break;
      case Verdict::Undecided: f.undecided += 1; break;
    }
  }
  const double n = static_cast<double>(raster.cells.size());
  f.to_root0 /= n;
  f.to_root1 /= n;
  f.undecided /= n;
  return f;
}

namespace {

struct Bracket {
  double lo, hi;  // pole-centred real parts
};

// Locates a verdict change on [lo, hi] + i y. An Undecided midpoint is
// replaced by the nearest decided point at growing offsets; if the two
// points straddling it at the finest offset disagree, the crossing is
// pinned there.
Bracket bisect(const ChebyshevMap& map, double y, double lo, double hi, double tol, const OrbitPolicy& policy) {
  const auto verdict_at = [&](double t) { return classify_centered(map, Complex(t, y), policy).verdict; };
  Verdict vlo = verdict_at(lo);
  const Verdict vhi = verdict_at(hi);
  if (vlo == vhi || vlo == Verdict::Undecided || vhi == Verdict::Undecided)
    throw NoCrossing("probe_boundary: both ends of the segment at im = " + std::to_string(y) +
                     " have the same (or no) verdict");

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    double split = mid;
    Verdict v = verdict_at(mid);
    bool pinned = false;
    if (v == Verdict::Undecided) {
      const double widest = 0.25 * (hi - lo);
      for (double eps = std::min(0.25 * tol, widest);; eps = std::min(4 * eps, widest)) {
        const Verdict left = verdict_at(mid - eps);
        const Verdict right = verdict_at(mid + eps);
        if (left != Verdict::Undecided && right != Verdict::Undecided && left != right) {
          lo = mid - eps;
          hi = mid + eps;
          vlo = left;
          pinned = true;
          break;
        }
        if (left != Verdict::Undecided) {
          split = mid - eps;
          v = left;
          break;
        }
        if (right != Verdict::Undecided) {
          split = mid + eps;
          v = right;
          break;
        }
        if (eps >= widest) throw NoCrossing("probe_boundary: undecided band around the boundary");
      }
    }
    if (pinned) continue;
    if (v == vlo)
      lo = split;
    else
      hi = split;
  }
  return {lo, hi};
}

}  // namespace

BoundaryEstimate probe_boundary(const ChebyshevMap& map, const std::vector<double>& im_values, double tol,
                                const ProbeOptions& options) {
  if (!(tol > 0)) throw std::invalid_argument("probe_boundary: tol must be positive");
  if (!(options.re_left < options.re_right)) throw std::invalid_argument("probe_boundary: empty segment");
  const double xi = map.pole();
  OrbitPolicy policy = options.policy;
  policy.keep_trace = false;

  BoundaryEstimate estimate;
  estimate.line_re = xi;
  for (double y : im_values) {
    const Bracket b = bisect(map, y, options.re_left - xi, options.re_right - xi, tol, policy);
    const double offset = 0.5 * (b.lo + b.hi);
    estimate.points.emplace_back(xi + offset, y);
    estimate.brackets.emplace_back(xi + b.lo, xi + b.hi);
    estimate.max_deviation_from_L = std::max(estimate.max_deviation_from_L, std::abs(offset));
  }
  return estimate;
}

std::string boundary_to_json(const BoundaryEstimate& estimate) {
  nlohmann::json points = nlohmann::json::array();
  for (const Complex& p : estimate.points) points.push_back(complex_json(p));
  const nlohmann::json doc = {{"points", points}, {"max_deviation_from_L", round9(estimate.max_deviation_from_L)}};
  return doc.dump(2) + "\n";
}

std::vector<std::pair<int, int>> julia_pixels(const BasinRaster& raster) {
  const int w = raster.window.width();
  const int h = raster.window.height();
  const auto opposite = [](Verdict a, Verdict b) {
    return a != Verdict::Undecided && b != Verdict::Undecided && a != b;
  };
  std::vector<std::pair<int, int>> out;
  for (int row = 0; row < h; ++row)
    for (int col = 0; col < w; ++col) {
      const Verdict v = raster.at(col, row).verdict;
      bool hit = v == Verdict::Undecided;
      if (!hit && col > 0) hit = opposite(v, raster.at(col - 1, row).verdict);
      if (!hit && col + 1 < w) hit = opposite(v, raster.at(col + 1, row).verdict);
      if (!hit && row > 0) hit = opposite(v, raster.at(col, row - 1).verdict);
      if (!hit && row + 1 < h) hit = opposite(v, raster.at(col, row + 1).verdict);
      if (hit) out.emplace_back(col, row);
    }
  return out;
}

double hausdorff_to_L(const BasinRaster& raster) {
  if (raster.k != raster.m) throw std::invalid_argument("hausdorff_to_L: needs a raster of a k == m map");
  const auto pixels = julia_pixels(raster);
  if (pixels.empty()) throw EmptyJulia("hausdorff_to_L: no Julia pixels in the raster");
  const double base = raster.window.midpoint().real() - 0.5;
  double worst = 0.0;
  for (const auto& [col, row] : pixels)
    worst = std::max(worst, std::abs(base + raster.window.offset(col, row).real()));
  return worst;
}

}  // namespace cheb
