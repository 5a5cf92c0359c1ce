#pragma once

// Basin rasters over rectangular windows of the plane, PPM output, and
// probes of the boundary between the basins of 0 and 1.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cheb/dynamics.hpp"

namespace cheb {

/// Axis-aligned window sampled at pixel centres. Row 0 is the top row
/// (largest imaginary part).
///
/// Centres are computed as window midpoint + offset, with offsets exactly
/// antisymmetric about the midpoint; a window symmetric about a point
/// therefore samples bit-exact mirror images.
class Window {
 public:
  /// Throws std::invalid_argument unless re_min < re_max, im_min < im_max
  /// and both pixel counts are >= 1.
  Window(double re_min, double re_max, double im_min, double im_max, int width, int height);

  double re_min() const { return re_min_; }
  double re_max() const { return re_max_; }
  double im_min() const { return im_min_; }
  double im_max() const { return im_max_; }
  int width() const { return width_; }
  int height() const { return height_; }
  double step_re() const { return (re_max_ - re_min_) / width_; }
  double step_im() const { return (im_max_ - im_min_) / height_; }

  Complex midpoint() const;
  /// Pixel centre minus the midpoint.
  Complex offset(int col, int row) const;
  Complex center(int col, int row) const { return midpoint() + offset(col, row); }

  /// Pixel containing z, or nullopt outside the window.
  std::optional<std::pair<int, int>> pixel_of(Complex z) const;

 private:
  double re_min_, re_max_, im_min_, im_max_;
  int width_, height_;
};

struct Cell {
  Verdict verdict = Verdict::Undecided;
  int iterations = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct BasinRaster {
  Window window;
  int k = 1;
  int m = 1;
  /// Row-major, row 0 at the top.
  std::vector<Cell> cells;

  const Cell& at(int col, int row) const { return cells[static_cast<std::size_t>(row) * window.width() + col]; }
  Cell& at(int col, int row) { return cells[static_cast<std::size_t>(row) * window.width() + col]; }
};

inline constexpr int kMinRenderPixels = 8;

/// Classifies every pixel centre. Throws std::invalid_argument if the
/// window is narrower or shorter than kMinRenderPixels.
BasinRaster render(const ChebyshevMap& map, const Window& window, const OrbitPolicy& policy = {});

struct Rgb {
  std::uint8_t r, g, b;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Basin of 0 in blue (30,60,200), basin of 1 in yellow (230,200,40), each
/// darkened linearly to 40% as the iteration count goes from 0 to 60;
/// Undecided in black.
Rgb cell_color(const Cell& cell);

/// Binary P6 image: "P6\n<w> <h>\n255\n" then rows top to bottom.
std::string encode_ppm(const BasinRaster& raster);

/// Throws IoError on an empty path or a failed write.
void emit_ppm(const BasinRaster& raster, const std::string& path);

struct BasinFractions {
  double to_root0 = 0, to_root1 = 0, undecided = 0;
};

BasinFractions basin_fractions(const BasinRaster& raster);

struct BoundaryEstimate {
  /// Crossing points, one per probed height.
  std::vector<Complex> points;
  /// Real parts of the final bracket around each crossing: the left end
  /// and the right end carry different basin verdicts.
  std::vector<std::pair<double, double>> brackets;
  /// Real part of the reference line (the vertical line through the pole).
  double line_re = 0.5;
  double max_deviation_from_L = 0.0;
};

struct ProbeOptions {
  double re_left = -1.0;
  double re_right = 2.0;
  OrbitPolicy policy{};
};

/// Bisects the segment [re_left, re_right] + i y for each y down to width
/// tol, tracking a change of basin verdict. Throws std::invalid_argument if
/// tol <= 0 and NoCrossing when the two ends classify identically.
BoundaryEstimate probe_boundary(const ChebyshevMap& map, const std::vector<double>& im_values, double tol,
                                const ProbeOptions& options = {});

/// {"points": [[re, im], ...], "max_deviation_from_L": d}
std::string boundary_to_json(const BoundaryEstimate& estimate);

/// Pixels standing in for the Julia set: Undecided pixels plus decided
/// pixels with a 4-neighbour in the opposite basin.
std::vector<std::pair<int, int>> julia_pixels(const BasinRaster& raster);

/// One-sided Hausdorff distance from the sampled Julia set to Re z = 1/2:
/// max |Re c - 1/2| over the centres c of julia_pixels(). Throws
/// std::invalid_argument unless k == m, EmptyJulia when no pixel qualifies.
double hausdorff_to_L(const BasinRaster& raster);

}  // namespace cheb
