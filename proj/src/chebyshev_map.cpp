#include "cheb/chebyshev_map.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cheb/errors.hpp"

namespace cheb {
namespace {

using Int = __int128;

Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw CoefficientOverflow("coefficient exceeds 128-bit range");
  return r;
}

Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw CoefficientOverflow("coefficient exceeds 128-bit range");
  return r;
}

Int mul(std::initializer_list<Int> factors) {
  Int r = 1;
  for (Int f : factors) r = mul(r, f);
  return r;
}

double to_double(Int v) { return static_cast<double>(v); }

Int binomial(int n, int r) {
  Int out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

Int power(Int base, int e) {
  Int out = 1;
  for (int i = 0; i < e; ++i) out = mul(out, base);
  return out;
}

// Coefficients of N(w + xi) - 2 d^3 xi w^3, ascending in w. Exact through
// u = d w (integer Taylor shift by k) when the intermediates fit in 128 bits.
std::vector<double> centered_coefficients(int k, int m, const std::array<Int, 4>& a) {
  const Int d = k + m;
  // a_by_power[p] is the coefficient of z^p in N, p = 1..4.
  const std::array<Int, 5> a_by_power{0, a[3], a[2], a[1], a[0]};
  try {
    std::array<Int, 5> r{};
    for (int p = 1; p <= 4; ++p) {
      const Int scaled = mul(a_by_power[p], power(d, 4 - p));
      for (int j = 0; j <= p; ++j)
        r[j] = add(r[j], mul({scaled, binomial(p, j), power(k, p - j)}));
    }
    r[3] = add(r[3], -mul({2, k, power(d, 3)}));
    std::vector<double> out(5);
    for (int j = 0; j <= 4; ++j)
      out[j] = static_cast<double>(static_cast<long double>(r[j]) /
                                   static_cast<long double>(power(d, 4 - j)));
    return out;
  } catch (const CoefficientOverflow&) {
  }

  const long double xi = static_cast<long double>(k) / static_cast<long double>(k + m);
  std::vector<long double> shifted(5, 0.0L);
  for (int p = 1; p <= 4; ++p)
    for (int j = 0; j <= p; ++j)
      shifted[j] += static_cast<long double>(a_by_power[p]) *
                    static_cast<long double>(binomial(p, j)) * std::pow(xi, p - j);
  shifted[3] -= 2.0L * std::pow(static_cast<long double>(k + m), 3) * xi;
  std::vector<double> out(shifted.begin(), shifted.end());
  if (k == m) out[1] = out[3] = 0.0;  // odd part vanishes identically
  return out;
}

Complex divide(Complex num, Complex den) {
  // Written out so that negating or conjugating both operands negates or
  // conjugates the result bit-exactly.
  const double n = std::norm(den);
  return {(num.real() * den.real() + num.imag() * den.imag()) / n,
          (num.imag() * den.real() - num.real() * den.imag()) / n};
}

}  // namespace

ChebyshevMap build_map(int k, int m) {
  if (k < 1 || m < 1) throw std::invalid_argument("build_map: k and m must be >= 1");
  if (static_cast<long long>(k) + m > kMaxDegree)
    throw std::invalid_argument("build_map: k + m exceeds " + std::to_string(kMaxDegree));

  const Int K = k;
  const Int d = k + m;
  const std::array<Int, 4> a{
      mul({d, d - 1, 2 * d - 1}),
      add(add(mul({3 - 6 * K, d, d}), mul(6 * K - 1, d)), -2 * K),
      mul({3, K, K - 1, 2 * d - 1}),
      -mul({K, K - 1, 2 * K - 1}),
  };
  const std::array<Int, 5> f{
      mul({K, K, K - 1, 2 * K - 1}),
      -mul({2, K, K - 1, add(mul(4 * K + 1, d), -3 * K)}),
      mul({3, K, add(mul({K, d - 1, 3 * d - 2}), mul({K - 1, d, d}))}),
      mul({4, K, d, d - 1, -2 * d + 1}),
      mul({d, d, d - 1, 2 * d - 1}),
  };
  const std::array<Int, 3> e{
      mul(K, 3 * K - 1),
      -mul({2, K, 3 * d - 1}),
      mul(d, 3 * d - 1),
  };

  ChebyshevMap map;
  map.k_ = k;
  map.m_ = m;
  map.numerator_ = RealPoly({0.0, to_double(a[3]), to_double(a[2]), to_double(a[1]), to_double(a[0])});
  map.derivative_numerator_ =
      RealPoly({to_double(f[0]), to_double(f[1]), to_double(f[2]), to_double(f[3]), to_double(f[4])});
  map.extraneous_poly_ = RealPoly({to_double(e[0]), to_double(e[1]), to_double(e[2])});
  map.centered_ = RealPoly(centered_coefficients(k, m, a));
  for (int i = 0; i < 4; ++i) map.a_[i] = to_double(a[i]);
  map.pole_ = static_cast<double>(k) / static_cast<double>(k + m);
  map.denom_scale_ = 2.0 * std::pow(static_cast<double>(k + m), 3);

  const double dd = k + m;
  const double s = 3.0 * dd - 1.0;
  const double root = std::sqrt(static_cast<double>(k) * m * s);
  map.extraneous_ = {(k * s - root) / (dd * s), (k * s + root) / (dd * s)};
  return map;
}

double ChebyshevMap::multiplier_at_zero() const {
  const double kk = k_;
  return (kk - 1) * (2 * kk - 1) / (2 * kk * kk);
}

double ChebyshevMap::multiplier_at_one() const {
  const double mm = m_;
  return (mm - 1) * (2 * mm - 1) / (2 * mm * mm);
}

double ChebyshevMap::multiplier_at_infinity() const {
  const double d = k_ + m_;
  return 2 * d * d / (2 * d * d - 3 * d + 1);
}

XComplex ChebyshevMap::step_centered(Complex w) const {
  const double r = std::abs(w);
  if (r < kCentredPoleRadius) return XComplex::infinity();
  if (r > kAsymptoticModulus) return XComplex(w / multiplier_at_infinity());
  const auto& c = centered_.coeffs();
  const auto coeff = [&](std::size_t i) { return i < c.size() ? c[i] : 0.0; };
  if (r <= 1.0) {
    Complex num = coeff(4);
    for (int i = 3; i >= 0; --i) num = num * w + coeff(static_cast<std::size_t>(i));
    return XComplex(divide(num, denom_scale_ * (w * w * w)));
  }
  // Divided through by w^3 to stay clear of overflow.
  const Complex v = std::conj(w) / std::norm(w);
  const Complex tail = ((coeff(0) * v + coeff(1)) * v + coeff(2)) * v;
  return XComplex((coeff(4) * w + coeff(3) + tail) / denom_scale_);
}

XComplex eval(const ChebyshevMap& map, const XComplex& z) {
  if (z.is_infinite()) return XComplex::infinity();
  const Complex x = z.value();
  const double r = std::abs(x);
  if (std::abs(x - map.pole()) < kPoleRadius) return XComplex::infinity();
  if (r > kAsymptoticModulus) return XComplex(x / map.multiplier_at_infinity());
  const double d = map.degree_sum();
  const double k = map.k();
  const auto& a = map.a_coeffs();
  if (r <= 1.0) {
    const Complex den = d * x - k;
    return XComplex(poly_eval(map.numerator(), x) / (2.0 * den * den * den));
  }
  // z (A0 + A1 v + A2 v^2 + A3 v^3) / (2 (d - k v)^3), v = 1/z.
  const Complex v = 1.0 / x;
  const Complex num = ((a[3] * v + a[2]) * v + a[1]) * v + a[0];
  const Complex den = d - k * v;
  return XComplex(x * num / (2.0 * den * den * den));
}

Complex eval_derivative(const ChebyshevMap& map, const XComplex& z) {
  if (z.is_infinite()) throw std::invalid_argument("eval_derivative: z must be finite");
  const Complex x = z.value();
  if (std::abs(x - map.pole()) <= 1e-300) throw PoleInput("eval_derivative: z is the pole");
  const double d = map.degree_sum();
  const double k = map.k();
  if (std::abs(x) <= 1.0) {
    const Complex den = d * x - k;
    const Complex den2 = den * den;
    return poly_eval(map.derivative_numerator(), x) / (2.0 * den2 * den2);
  }
  const Complex v = 1.0 / x;
  const auto& f = map.derivative_numerator().coeffs();
  Complex num = 0.0;
  for (double c : f) num = num * v + c;  // reversed coefficients
  const Complex den = d - k * v;
  const Complex den2 = den * den;
  return num / (2.0 * den2 * den2);
}

const char* to_string(FixedPointKind kind) {
  switch (kind) {
    case FixedPointKind::RootOfP: return "RootOfP";
    case FixedPointKind::Extraneous: return "Extraneous";
    case FixedPointKind::Infinity: return "Infinity";
  }
  return "?";
}

const char* to_string(Stability stability) {
  switch (stability) {
    case Stability::SuperAttracting: return "SuperAttracting";
    case Stability::Attracting: return "Attracting";
    case Stability::Neutral: return "Neutral";
    case Stability::Repelling: return "Repelling";
  }
  return "?";
}

Stability classify_multiplier(Complex multiplier) {
  const double r = std::abs(multiplier);
  if (r == 0.0) return Stability::SuperAttracting;
  if (std::abs(r - 1.0) <= 1e-12) return Stability::Neutral;
  return r < 1.0 ? Stability::Attracting : Stability::Repelling;
}

std::pair<double, double> extraneous_multiplier_closed_form(int k, int m) {
  const double kk = k;
  const double mm = m;
  const double d = kk + mm;
  const double s = 3 * d - 1;
  const double scale = s * s / (kk * mm * d * d);
  const double base = kk * mm * (3 * d - 2) / s;
  const double skew = (kk - mm) * std::sqrt(kk * mm / s);
  return {1 + scale * (base + skew), 1 + scale * (base - skew)};
}

std::vector<FixedPointInfo> fixed_points(const ChebyshevMap& map) {
  std::vector<FixedPointInfo> out;
  const auto root = [&](double where, double multiplier) {
    out.push_back({XComplex(where), multiplier, FixedPointKind::RootOfP, classify_multiplier(multiplier), {}});
  };
  root(0.0, map.multiplier_at_zero());
  root(1.0, map.multiplier_at_one());
  const double at_inf = map.multiplier_at_infinity();
  out.push_back({XComplex::infinity(), at_inf, FixedPointKind::Infinity, classify_multiplier(at_inf), {}});

  // The closed form does not say which sign belongs to which point; pair
  // each closed-form value with the nearer differentiated multiplier.
  const auto [e1, e2] = map.extraneous_points();
  const double num1 = eval_derivative(map, XComplex(e1)).real();
  const double num2 = eval_derivative(map, XComplex(e2)).real();
  const auto [plus, minus] = extraneous_multiplier_closed_form(map.k(), map.m());
  const double straight = std::abs(plus - num1) + std::abs(minus - num2);
  const double swapped = std::abs(plus - num2) + std::abs(minus - num1);
  const double for_e1 = straight <= swapped ? plus : minus;
  const double for_e2 = straight <= swapped ? minus : plus;
  const auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
  if (rel(for_e1, num1) > 1e-8 || rel(for_e2, num2) > 1e-8)
    throw std::logic_error("fixed_points: extraneous multiplier closed form disagrees with C'");
  out.push_back({XComplex(e1), for_e1, FixedPointKind::Extraneous, classify_multiplier(for_e1), Complex(num1)});
  out.push_back({XComplex(e2), for_e2, FixedPointKind::Extraneous, classify_multiplier(for_e2), Complex(num2)});
  return out;
}

CriticalPointSet critical_points(const ChebyshevMap& map, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("critical_points: tol must be positive");
  CriticalPointSet set;
  set.pole = map.pole();
  set.pole_multiplicity = 2;
  set.quartic_roots = find_roots(map.derivative_numerator(), tol);
  return set;
}

TwoRootPolynomial::TwoRootPolynomial(Complex root_a, Complex root_b, int k, int m, Complex leading)
    : a_(root_a), b_(root_b), k_(k), m_(m), leading_(leading) {
  if (root_a == root_b) throw std::invalid_argument("TwoRootPolynomial: roots must differ");
  if (k < 1 || m < 1) throw std::invalid_argument("TwoRootPolynomial: multiplicities must be >= 1");
  if (leading == Complex(0.0)) throw std::invalid_argument("TwoRootPolynomial: zero leading coefficient");
}

XComplex TwoRootPolynomial::chebyshev_step(const XComplex& w) const {
  if (w.is_infinite()) return XComplex::infinity();
  const Complex z = w.value();
  if (z == a_ || z == b_) return w;
  const Complex ia = 1.0 / (z - a_);
  const Complex ib = 1.0 / (z - b_);
  // q'/q and sum of k/(z-a)^2 terms; q''/q = s1^2 - s2.
  const Complex s1 = static_cast<double>(k_) * ia + static_cast<double>(m_) * ib;
  if (s1 == Complex(0.0)) return XComplex::infinity();
  const Complex s2 = static_cast<double>(k_) * ia * ia + static_cast<double>(m_) * ib * ib;
  const Complex L = (s1 * s1 - s2) / (s1 * s1);
  return XComplex(z - (1.0 + 0.5 * L) / s1);
}

XComplex AffineMap::apply(const XComplex& z) const {
  if (z.is_infinite()) return z;
  return XComplex(alpha * z.value() + beta);
}

XComplex AffineMap::inverse(const XComplex& w) const {
  if (w.is_infinite()) return w;
  return XComplex((w.value() - beta) / alpha);
}

Conjugation conjugate_from_general(const TwoRootPolynomial& q) {
  return {build_map(q.k(), q.m()), AffineMap{q.root_b() - q.root_a(), q.root_a()}};
}

XComplex newton_map_eval(int k, int m, const XComplex& z) {
  if (k < 1 || m < 1) throw std::invalid_argument("newton_map_eval: k and m must be >= 1");
  if (z.is_infinite()) return z;
  const Complex x = z.value();
  const Complex den = static_cast<double>(k + m) * x - static_cast<double>(k);
  if (den == Complex(0.0)) return XComplex::infinity();
  return XComplex(x - x * (x - 1.0) / den);
}

}  // namespace cheb
