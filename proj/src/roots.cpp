#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cheb/errors.hpp"
#include "cheb/numeric.hpp"

namespace cheb {
namespace {

// The refinement runs in extended precision so that double roots separate
// by ~1e-10 rather than ~1e-8 and fall cleanly inside the cluster radius.
using Real = long double;
using XC = std::complex<Real>;

constexpr Real kEps = std::numeric_limits<Real>::epsilon();

struct Eval {
  XC value;
  XC derivative;
  Real error_bound;  // running bound on rounding error in value
};

Eval horner(const std::vector<Real>& c, XC z) {
  XC p = c.back();
  XC dp = 0;
  Real bound = std::abs(c.back());
  const Real az = std::abs(z);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[i];
    bound = bound * az + std::abs(p);
  }
  return {p, dp, bound * 4 * kEps * static_cast<Real>(c.size())};
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

std::vector<XC> aberth(const std::vector<Real>& c, double tol, int max_sweeps) {
  const std::size_t n = c.size() - 1;
  Real radius = 0;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i] / c[n]));
  radius += 1;

  const Real two_pi = 2 * std::acos(Real(-1));
  std::vector<XC> z(n);
  for (std::size_t j = 0; j < n; ++j)
    z[j] = std::polar(radius, two_pi * static_cast<Real>(j) / static_cast<Real>(n) + Real(0.4));

  std::vector<bool> done(n, false);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Eval e = horner(c, z[i]);
      if (std::abs(e.value) <= e.error_bound) {
        done[i] = true;
        continue;
      }
      XC repulsion = 0;
      XC product = c[n];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        repulsion += Real(1) / (z[i] - z[j]);
        product *= z[i] - z[j];
      }
      XC step;
      if (e.derivative != XC(0)) {
        const XC ratio = e.value / e.derivative;
        const XC denom = Real(1) - ratio * repulsion;
        step = denom != XC(0) ? ratio / denom : ratio;
      } else {
        step = e.value / product;  // Weierstrass step at a critical point of p
      }
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = XC(tol, tol);
      z[i] -= step;
      if (std::abs(step) <= static_cast<Real>(tol) * std::max<Real>(1, std::abs(z[i])))
        done[i] = true;
      else
        all_done = false;
    }
    if (all_done) return z;
  }
  throw NoConvergence("find_roots: no convergence within " + std::to_string(max_sweeps) +
                      " sweeps");
}

// A root of multiplicity mu is a simple root of the (mu-1)-th derivative;
// Newton there recovers it far more accurately than the cluster centroid.
XC polish_multiple(const std::vector<Real>& c, XC start, int mu, Real spread) {
  std::vector<Real> d = c;
  for (int order = 1; order < mu; ++order) {
    std::vector<Real> next(d.size() - 1);
    for (std::size_t i = 1; i < d.size(); ++i) next[i - 1] = static_cast<Real>(i) * d[i];
    d = std::move(next);
  }
  if (d.size() < 2) return start;
  XC z = start;
  for (int it = 0; it < 50; ++it) {
    const Eval e = horner(d, z);
    if (e.derivative == XC(0) || std::abs(e.value) <= e.error_bound) break;
    const XC step = e.value / e.derivative;
    z -= step;
    if (std::abs(step) <= 4 * kEps * std::max<Real>(1, std::abs(z))) break;
  }
  // Keep the centroid if Newton wandered off the cluster.
  return std::abs(z - start) <= 4 * spread + 1e3L * kEps * std::max<Real>(1, std::abs(start)) ? z : start;
}

// Taylor coefficients of p about z0.
std::vector<XC> taylor_shift(const std::vector<Real>& c, XC z0) {
  std::vector<XC> t(c.begin(), c.end());
  const std::size_t n = t.size() - 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = n - 1; j + 1 > i; --j) t[j] += z0 * t[j + 1];
  return t;
}

// Coefficients given in double carry a relative error of about 2^-53, which
// splits a mu-fold root into mu roots at distance ~ (err / |t_mu|)^(1/mu).
// A group whose spread is within that radius is one multiple root.
bool consistent_multiple(const std::vector<Real>& c, const std::vector<XC>& group) {
  const auto mu = group.size();
  XC centre = 0;
  for (const XC& z : group) centre += z;
  centre /= static_cast<Real>(mu);
  Real spread = 0;
  for (const XC& z : group) spread = std::max(spread, std::abs(z - centre));

  const Real az = std::abs(centre);
  Real size = 0, power = 1;
  for (Real ci : c) {
    size += std::abs(ci) * power;
    power *= az;
  }
  const std::vector<XC> t = taylor_shift(c, centre);
  const Real lead = std::abs(t[mu]);
  if (lead == 0) return true;
  const Real err = 16 * static_cast<Real>(std::numeric_limits<double>::epsilon()) * size;
  return spread <= 10 * std::pow(err / lead, Real(1) / static_cast<Real>(mu));
}

}  // namespace

RootSet find_roots(const RealPoly& p, double tol, const RootFinderOptions& options) {
  if (p.degree() < 1) throw std::invalid_argument("find_roots: degree must be >= 1");
  if (!(tol > 0)) throw std::invalid_argument("find_roots: tol must be positive");

  const auto& coeffs = p.coeffs();
  std::size_t zeros = 0;
  while (coeffs[zeros] == 0.0) ++zeros;
  std::vector<Real> c(coeffs.begin() + static_cast<std::ptrdiff_t>(zeros), coeffs.end());
  const std::size_t n = c.size() - 1;

  // Approximations plus inclusion radii; exact zero roots get radius 0.
  std::vector<XC> approx(zeros, XC(0));
  std::vector<Real> radius(zeros, 0);
  if (n == 1) {
    approx.push_back(-c[0] / c[1]);
    radius.push_back(0);
  } else if (n > 1) {
    const std::vector<XC> z = aberth(c, tol, options.max_sweeps);
    for (std::size_t i = 0; i < n; ++i) {
      XC product = c[n];
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) product *= z[i] - z[j];
      const Real w = std::abs(horner(c, z[i]).value) / std::abs(product);
      approx.push_back(z[i]);
      radius.push_back(std::isfinite(w) ? 2 * static_cast<Real>(n) * w
                                        : std::numeric_limits<Real>::infinity());
    }
  }

  Real scale = 1;
  for (const auto& z : approx) scale = std::max(scale, std::abs(z));
  const Real cluster_radius = static_cast<Real>(options.cluster_tol) * scale;

  // Merge approximations that are close or whose inclusion disks overlap;
  // overlapping disks in one component enclose exactly that many roots.
  UnionFind uf(approx.size());
  for (std::size_t i = 0; i < approx.size(); ++i)
    for (std::size_t j = i + 1; j < approx.size(); ++j) {
      const Real dist = std::abs(approx[i] - approx[j]);
      if (dist <= cluster_radius || dist <= radius[i] + radius[j]) uf.unite(i, j);
    }
  // Grow each approximation's nearest-neighbour group as far as it stays
  // consistent with a single multiple root.
  for (std::size_t i = zeros; i < approx.size(); ++i) {
    std::vector<std::size_t> order;
    for (std::size_t j = zeros; j < approx.size(); ++j) order.push_back(j);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(approx[a] - approx[i]) < std::abs(approx[b] - approx[i]);
    });
    for (std::size_t mu = order.size(); mu >= 2; --mu) {
      std::vector<XC> group;
      for (std::size_t q = 0; q < mu; ++q) group.push_back(approx[order[q]]);
      if (consistent_multiple(c, group)) {
        for (std::size_t q = 1; q < mu; ++q) uf.unite(order[0], order[q]);
        break;
      }
    }
  }

  struct Cluster {
    XC sum = 0;
    int count = 0;
    bool has_exact_zero = false;
    std::vector<XC> members;
  };
  std::vector<Cluster> clusters(approx.size());
  for (std::size_t i = 0; i < approx.size(); ++i) {
    Cluster& cl = clusters[uf.find(i)];
    cl.sum += approx[i];
    ++cl.count;
    cl.members.push_back(approx[i]);
    if (i < zeros) cl.has_exact_zero = true;
  }

  RootSet out;
  for (const auto& cl : clusters) {
    if (cl.count == 0) continue;
    XC mean = cl.has_exact_zero ? XC(0) : cl.sum / static_cast<Real>(cl.count);
    if (!cl.has_exact_zero && cl.count > 1) {
      Real spread = 0;
      for (const XC& z : cl.members) spread = std::max(spread, std::abs(z - mean));
      mean = polish_multiple(c, mean, cl.count, spread);
    }
    out.roots.push_back({Complex(static_cast<double>(mean.real()), static_cast<double>(mean.imag())),
                         cl.count});
  }

  // Real coefficients: pair every root with its nearest conjugate image.
  std::vector<bool> paired(out.roots.size(), false);
  for (std::size_t i = 0; i < out.roots.size(); ++i) {
    if (paired[i]) continue;
    const Complex target = std::conj(out.roots[i].location);
    std::size_t best = i;
    double best_dist = std::abs(out.roots[i].location - target);
    for (std::size_t j = 0; j < out.roots.size(); ++j) {
      if (paired[j] || j == i || out.roots[j].multiplicity != out.roots[i].multiplicity) continue;
      const double dist = std::abs(out.roots[j].location - target);
      if (dist < best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    paired[i] = paired[best] = true;
    if (best == i) {
      out.roots[i].location = out.roots[i].location.real();
    } else {
      const Complex avg = 0.5 * (out.roots[i].location + std::conj(out.roots[best].location));
      out.roots[i].location = avg;
      out.roots[best].location = std::conj(avg);
    }
  }

  std::sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
  for (const auto& r : out.roots)
    out.residual = std::max(out.residual, std::abs(poly_eval(p, r.location)));
  return out;
}

}  // namespace cheb
