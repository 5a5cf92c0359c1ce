#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include <json.hpp>

#include "cheb/errors.hpp"
#include "cheb/raster.hpp"

using namespace cheb;

namespace {

Verdict swapped(Verdict v) {
  if (v == Verdict::ToRoot0) return Verdict::ToRoot1;
  if (v == Verdict::ToRoot1) return Verdict::ToRoot0;
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

BasinRaster split_raster(int width, Verdict middle) {
  // Left of the middle column ToRoot0, right ToRoot1, over [0,1]^2.
  BasinRaster r{Window(0, 1, 0, 1, width, width), 3, 3, {}};
  r.cells.resize(static_cast<std::size_t>(width) * width);
  for (int row = 0; row < width; ++row)
    for (int col = 0; col < width; ++col) {
      Verdict v = col < width / 2 ? Verdict::ToRoot0 : Verdict::ToRoot1;
      if (width % 2 == 1 && col == width / 2) v = middle;
      r.at(col, row) = {v, 5};
    }
  return r;
}

}  // namespace

TEST_CASE("Window validation and geometry") {
  CHECK_THROWS_AS(Window(1, 1, 0, 1, 8, 8), std::invalid_argument);
  CHECK_THROWS_AS(Window(2, 1, 0, 1, 8, 8), std::invalid_argument);
  CHECK_THROWS_AS(Window(0, 1, 0, -1, 8, 8), std::invalid_argument);
  CHECK_THROWS_AS(Window(0, 1, 0, 1, 0, 8), std::invalid_argument);
  CHECK_THROWS_AS(Window(-1e308, 1e308, 0, 1, 8, 8), std::invalid_argument);
  const Window w(-1, 2, -1.5, 1.5, 300, 200);
  CHECK(w.step_re() == doctest::Approx(0.01));
  CHECK(w.step_im() == doctest::Approx(0.015));
  CHECK(w.center(0, 0).real() == doctest::Approx(-0.995));
  CHECK(w.center(0, 0).imag() == doctest::Approx(1.4925));
  for (int c = 0; c < 300; ++c) CHECK(w.offset(c, 0).real() == -w.offset(299 - c, 0).real());
  for (int r = 0; r < 200; ++r) CHECK(w.offset(0, r).imag() == -w.offset(0, 199 - r).imag());
  const auto px = w.pixel_of(Complex(0.0, 0.0));
  REQUIRE(px.has_value());
  CHECK(px->first == 100);
  CHECK(px->second == 100);
  CHECK(w.pixel_of(Complex(2.0, 1.5)) == std::optional<std::pair<int, int>>({299, 0}));
  CHECK_FALSE(w.pixel_of(Complex(2.5, 0)).has_value());
}

TEST_CASE("render rejects tiny windows and completes at 8x8") {
  const ChebyshevMap map = build_map(2, 3);
  CHECK_THROWS_AS(render(map, Window(-1, 2, -1, 1, 7, 8)), std::invalid_argument);
  CHECK_THROWS_AS(render(map, Window(-1, 2, -1, 1, 8, 7)), std::invalid_argument);
  const BasinRaster r = render(map, Window(-1, 2, -1, 1, 8, 8));
  CHECK(r.cells.size() == 64);
  CHECK(r.k == 2);
  CHECK(r.m == 3);
  for (const Cell& c : r.cells) {
    CHECK(c.iterations >= 0);
    CHECK(c.iterations <= OrbitPolicy{}.max_iter);
  }
}

TEST_CASE("render cells agree with classify_orbit at pixel centres") {
  const ChebyshevMap map = build_map(6, 4);
  const Window w(-1, 2, -1.5, 1.5, 24, 16);
  const BasinRaster r = render(map, w);
  for (int row = 0; row < 16; ++row)
    for (int col = 0; col < 24; ++col) {
      const OrbitResult o = classify_orbit(map, w.center(col, row));
      CHECK(r.at(col, row).verdict == o.verdict);
    }
}

TEST_CASE("(1,1): a window well left of the axis is all basin of 0") {
  // Thin preimages of the basin of 1 reach into Re < 0 close to the axis.
  const BasinRaster r = render(build_map(1, 1), Window(-3, -0.25, -2, 2, 100, 100));
  CHECK(basin_fractions(r).to_root0 == 1.0);
}

TEST_CASE("(2,2): the halves split at Re = 1/2 up to small components") {
  const BasinRaster r = render(build_map(2, 2), Window(-1, 2, -1.5, 1.5, 150, 150));
  int left0 = 0, right1 = 0;
  for (int row = 0; row < 150; ++row)
    for (int col = 0; col < 150; ++col) {
      const Verdict v = r.at(col, row).verdict;
      if (col < 75) left0 += v == Verdict::ToRoot0;
      else right1 += v == Verdict::ToRoot1;
    }
  CHECK(left0 >= 0.97 * 75 * 150);
  CHECK(right1 >= 0.97 * 75 * 150);
}

TEST_CASE("the pixel column on Re = 1/2 is undecided for k == m") {
  // Width 65 over a window centred on 1/2: column 32 sits on the line.
  const Window w(0.5 - 65.0 / 64, 0.5 + 65.0 / 64, -1, 1, 65, 40);
  REQUIRE(w.center(32, 0).real() == 0.5);
  for (int m : {1, 3}) {
    const BasinRaster r = render(build_map(m, m), w);
    for (int row = 0; row < 40; ++row) CHECK(r.at(32, row).verdict == Verdict::Undecided);
  }
}

TEST_CASE("k == m rasters are mirror images with labels swapped") {
  for (int m : {1, 2, 7}) {
    const BasinRaster r = render(build_map(m, m), Window(-1, 2, -1.5, 1.5, 60, 50));
    for (int row = 0; row < 50; ++row)
      for (int col = 0; col < 60; ++col) {
        const Cell a = r.at(col, row);
        const Cell b = r.at(59 - col, row);
        CHECK(b.verdict == swapped(a.verdict));
        CHECK(b.iterations == a.iterations);
      }
  }
}

TEST_CASE("rasters over windows symmetric in Im are conjugate-symmetric") {
  for (auto [k, m] : {std::pair{6, 4}, {3, 10}, {1, 2}, {2, 2}}) {
    const BasinRaster r = render(build_map(k, m), Window(-1, 2, -1.5, 1.5, 40, 41));
    for (int row = 0; row < 41; ++row)
      for (int col = 0; col < 40; ++col) CHECK(r.at(col, row) == r.at(col, 40 - row));
  }
}

TEST_CASE("render is deterministic") {
  const ChebyshevMap map = build_map(6, 4);
  const Window w(-1, 2, -1.5, 1.5, 64, 48);
  CHECK(encode_ppm(render(map, w)) == encode_ppm(render(map, w)));
}

TEST_CASE("colour map") {
  CHECK(cell_color({Verdict::ToRoot0, 0}) == Rgb{30, 60, 200});
  CHECK(cell_color({Verdict::ToRoot1, 0}) == Rgb{230, 200, 40});
  CHECK(cell_color({Verdict::ToRoot0, 60}) == Rgb{12, 24, 80});
  CHECK(cell_color({Verdict::ToRoot1, 500}) == Rgb{92, 80, 16});
  CHECK(cell_color({Verdict::ToRoot0, 30}) == Rgb{21, 42, 140});
  CHECK(cell_color({Verdict::Undecided, 3}) == Rgb{0, 0, 0});
}

TEST_CASE("PPM bytes for a 2x1 raster") {
  const BasinRaster r{Window(0, 1, 0, 1, 2, 1), 1, 1, {{Verdict::ToRoot0, 0}, {Verdict::Undecided, 0}}};
  const std::string want = std::string("P6\n2 1\n255\n") + "\x1E\x3C\xC8" + std::string(3, '\0');
  CHECK(encode_ppm(r) == want);

  const auto path = std::filesystem::temp_directory_path() / "cheb_test_2x1.ppm";
  emit_ppm(r, path.string());
  CHECK(read_file(path) == want);
  std::filesystem::remove(path);
}

TEST_CASE("PPM of an all-undecided raster is black") {
  BasinRaster r{Window(0, 1, 0, 1, 3, 2), 1, 1, std::vector<Cell>(6)};
  const std::string bytes = encode_ppm(r);
  const std::string header = "P6\n3 2\n255\n";
  REQUIRE(bytes.size() == header.size() + 18);
  CHECK(bytes.substr(0, header.size()) == header);
  CHECK(bytes.substr(header.size()) == std::string(18, '\0'));
}

TEST_CASE("emit_ppm IO errors") {
  const BasinRaster r{Window(0, 1, 0, 1, 1, 1), 1, 1, {{Verdict::ToRoot1, 2}}};
  CHECK_THROWS_AS(emit_ppm(r, ""), IoError);
  CHECK_THROWS_AS(emit_ppm(r, "/nonexistent-dir/for/sure/out.ppm"), IoError);
}

TEST_CASE("basin_fractions") {
  const BasinRaster r = split_raster(9, Verdict::Undecided);
  const BasinFractions f = basin_fractions(r);
  CHECK(f.to_root0 == doctest::Approx(4.0 / 9));
  CHECK(f.to_root1 == doctest::Approx(4.0 / 9));
  CHECK(f.undecided == doctest::Approx(1.0 / 9));
}

TEST_CASE("probe_boundary on the line for k == m") {
  const std::vector<double> ys{-2.0, -0.7, 0.0, 0.3, 0.7, 1.9};
  for (int m : {1, 2, 5}) {
    const BoundaryEstimate est = probe_boundary(build_map(m, m), ys, 1e-10);
    REQUIRE(est.points.size() == ys.size());
    CHECK(est.line_re == 0.5);
    CHECK(est.max_deviation_from_L <= 1e-10);
    for (std::size_t i = 0; i < ys.size(); ++i) {
      CHECK(std::abs(est.points[i].real() - 0.5) <= 1e-10);
      CHECK(est.points[i].imag() == ys[i]);
    }
  }
}

TEST_CASE("probe_boundary brackets straddle opposite verdicts") {
  const ChebyshevMap map = build_map(6, 4);
  const BoundaryEstimate est = probe_boundary(map, {0.0, 0.4, -1.1}, 1e-9);
  for (std::size_t i = 0; i < est.points.size(); ++i) {
    const auto [lo, hi] = est.brackets[i];
    CHECK(hi - lo <= 1e-9 * 1.01);
    const double y = est.points[i].imag();
    const Verdict a = classify_orbit(map, Complex(lo, y)).verdict;
    const Verdict b = classify_orbit(map, Complex(hi, y)).verdict;
    CHECK(a != Verdict::Undecided);
    CHECK(b != Verdict::Undecided);
    CHECK(a != b);
  }
  // On the real axis the crossing lies between the extraneous points.
  const auto [e1, e2] = map.extraneous_points();
  CHECK(est.points[0].real() > e1);
  CHECK(est.points[0].real() < e2);
}

TEST_CASE("probe_boundary errors") {
  const ChebyshevMap map = build_map(2, 2);
  CHECK_THROWS_AS(probe_boundary(map, {0.5}, 0.0), std::invalid_argument);
  ProbeOptions same;
  same.re_left = -3;
  same.re_right = -2;
  CHECK_THROWS_AS(probe_boundary(map, {0.5}, 1e-8, same), NoCrossing);
  ProbeOptions inverted;
  inverted.re_left = 2;
  inverted.re_right = -1;
  CHECK_THROWS_AS(probe_boundary(map, {0.5}, 1e-8, inverted), std::invalid_argument);
}

TEST_CASE("boundary JSON") {
  BoundaryEstimate est;
  est.points = {{0.5, -1.0}, {0.123456789123, 2.0}};
  est.max_deviation_from_L = 1.23456789123e-11;
  const auto doc = nlohmann::json::parse(boundary_to_json(est));
  REQUIRE(doc["points"].size() == 2);
  CHECK(doc["points"][0][0].get<double>() == 0.5);
  CHECK(doc["points"][1][0].get<double>() == 0.123456789);
  CHECK(doc["max_deviation_from_L"].get<double>() == 1.23456789e-11);
}

TEST_CASE("julia pixels and the Hausdorff estimate on synthetic rasters") {
  // Undecided only on the centre column, which lies on Re = 1/2.
  const BasinRaster centred = split_raster(9, Verdict::Undecided);
  CHECK(julia_pixels(centred).size() == 9);
  CHECK(hausdorff_to_L(centred) == 0.0);
  // No undecided cells: the boundary pixels sit half a pixel off the line.
  const BasinRaster even = split_raster(8, Verdict::Undecided);
  CHECK(julia_pixels(even).size() == 16);
  CHECK(hausdorff_to_L(even) == doctest::Approx(0.5 / 8));

  BasinRaster flat = split_raster(8, Verdict::Undecided);
  for (Cell& c : flat.cells) c.verdict = Verdict::ToRoot0;
  CHECK_THROWS_AS(hausdorff_to_L(flat), EmptyJulia);
  BasinRaster unequal = centred;
  unequal.m = 4;
  CHECK_THROWS_AS(hausdorff_to_L(unequal), std::invalid_argument);
}

TEST_CASE("Hausdorff estimate shrinks from m = 2 to m = 20") {
  const Window w(-0.5, 1.5, -1, 1, 200, 200);
  const double h2 = hausdorff_to_L(render(build_map(2, 2), w));
  const double h20 = hausdorff_to_L(render(build_map(20, 20), w));
  CHECK(h20 < h2);
}

TEST_CASE("for m = 2 the Julia pixel farthest from L is near the real axis") {
  const BasinRaster r = render(build_map(2, 2), Window(-0.5, 1.5, -1, 1, 300, 300));
  double worst = -1;
  Complex at;
  for (const auto& [col, row] : julia_pixels(r)) {
    const Complex c = r.window.center(col, row);
    if (std::abs(c.real() - 0.5) > worst) {
      worst = std::abs(c.real() - 0.5);
      at = c;
    }
  }
  CHECK(std::abs(at.imag()) <= 0.2);
}
