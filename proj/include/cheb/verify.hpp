#pragma once

// Executable checks of the real-line, multiplier, critical-point and
// line-dynamics facts for C over a grid of (k, m), with a JSON report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cheb/raster.hpp"

namespace cheb {

struct CheckResult {
  /// Single letter a..k.
  std::string lemma_id;
  std::string name;
  /// The statement being checked, as a formula.
  std::string anchor;
  int k = 1;
  int m = 1;
  bool passed = false;
  /// First failing input; present whenever passed is false.
  std::optional<std::string> witness;
  std::string detail;
};

struct SuiteOptions {
  int k_min = 1, k_max = 6;
  int m_min = 1, m_max = 6;
  std::uint64_t seed = 7;
  int samples_per_interval = 200;
  int orbit_seeds = 20;
  /// Side lengths tried in turn by the immediate-basin split.
  std::vector<int> basin_resolutions{200, 400, 800};
  /// Heights probed on Re z = 1/2 for k == m.
  int boundary_heights = 9;
  double boundary_tol = 1e-10;
  double multiplier_tol = 1e-10;
  double fd_tol = 1e-6;
};

struct VerificationReport {
  SuiteOptions options;
  /// Ordered by (k, m), then lemma id.
  std::vector<CheckResult> results;

  bool all_passed() const;
};

/// Runs checks a..k for every (k, m) in the grid. Pairs run in parallel;
/// the report does not depend on the thread count. Throws
/// std::invalid_argument on an empty or non-positive range.
VerificationReport run_suite(const SuiteOptions& options = {});

/// {grid, seed, tolerances, samples, results: [...], passed}.
std::string report_to_json(const VerificationReport& report);

struct BasinSplit {
  int count0 = 0;
  int count1 = 0;
  /// Some critical point sits on a pixel whose 4-neighbours disagree with
  /// it, so a finer raster may move it to another component.
  bool borderline = false;
};

/// Flood-fills (4-connected) the ToRoot0 component holding the pixel
/// nearest 0 and the ToRoot1 component holding the pixel nearest 1, then
/// counts the roots of F, with multiplicity, whose pixel lies in each.
/// Throws CoverageError if 0, 1 or a root of F falls outside the window.
BasinSplit immediate_basin_split(const ChebyshevMap& map, const BasinRaster& raster);

}  // namespace cheb
