#pragma once

// Command-line front end: render, points, orbit, phi, boundary, verify.

#include <iosfwd>
#include <string>
#include <vector>

#include "cheb/raster.hpp"

namespace cheb::cli {

inline constexpr int kExitOk = 0;
/// A computation finished but reported failure (failed checks, no crossing).
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// "remin:remax:immin:immax" together with "WxH". Throws
/// std::invalid_argument on malformed text.
Window parse_window(const std::string& bounds, const std::string& px);

/// "a:b:n", n >= 1 evenly spaced values from a to b inclusive.
std::vector<double> parse_range(const std::string& text);

/// "RE,IM" or "RE".
Complex parse_point(const std::string& text);

/// argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cheb::cli
