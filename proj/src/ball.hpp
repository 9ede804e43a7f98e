#pragma once

// Ball arithmetic over binary floating point. Centers are rounded to nearest;
// every rounding error is captured exactly with error-free transforms and
// added to the radius, which is always rounded upward. Exact inputs whose
// arithmetic happens to be exact therefore keep radius zero.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/special_functions/next.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "toral/gaussian.hpp"
#include "toral/numerics.hpp"

namespace toral::detail {

using Quad = boost::multiprecision::cpp_bin_float_quad;

template <class R>
struct RealOps;

template <>
struct RealOps<double> {
  static constexpr int bits = 53;
  static double up(double x) { return x == 0 ? 0.0 : std::nextafter(x, std::numeric_limits<double>::infinity()); }
  static double down(double x) { return x == 0 ? 0.0 : std::nextafter(x, -std::numeric_limits<double>::infinity()); }
  static double prod_err(double a, double b, double p) { return std::fma(a, b, -p); }
  static Rational to_rational(double x) { return Rational(x); }
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
  static double nearest(const Rational& q) {
    double x = q.get_d();  // truncates
    double y = std::nextafter(x, q > Rational(x) ? INFINITY : -INFINITY);
    Rational ex = abs(Rational(x) - q), ey = abs(Rational(y) - q);
    return ey < ex ? y : x;
  }
  static double sqrt(double x) { return std::sqrt(x); }
  static double cos(double t) { return std::cos(t); }
  static double sin(double t) { return std::sin(t); }
  /// Bound on the error of cos/sin from the math library, in absolute terms.
  static double trig_err() { return 4.0 * std::numeric_limits<double>::epsilon(); }
  static double unit() { return std::ldexp(1.0, -53); }
};

template <>
struct RealOps<Quad> {
  static constexpr int bits = 113;
  static Quad up(const Quad& x) { return x == 0 ? Quad(0) : boost::math::float_next(x); }
  static Quad down(const Quad& x) { return x == 0 ? Quad(0) : boost::math::float_prior(x); }
  static void split(const Quad& a, Quad& hi, Quad& lo) {
    static const Quad factor = ldexp(Quad(1), 57) + 1;
    Quad c = factor * a;
    hi = c - (c - a);
    lo = a - hi;
  }
  static Quad prod_err(const Quad& a, const Quad& b, const Quad& p) {
    Quad ah, al, bh, bl;
    split(a, ah, al);
    split(b, bh, bl);
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl;
  }
  static Rational to_rational(const Quad& x) {
    if (x == 0) return Rational(0);
    int e = 0;
    Quad m = frexp(x, &e);
    Quad M = ldexp(m, 113);
    boost::multiprecision::cpp_int ci = M.convert_to<boost::multiprecision::cpp_int>();
    Integer z(ci.str());
    Rational r(z);
    int shift = e - 113;
    if (shift > 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(shift));
    if (shift < 0) mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-shift));
    return r;
  }
  static double to_double(const Quad& x) { return x.convert_to<double>(); }
  static Quad from_double(double x) { return Quad(x); }
  static Quad nearest(const Rational& q) {
    return Quad(q.get_num().get_str()) / Quad(q.get_den().get_str());
  }
  static Quad sqrt(const Quad& x) { return boost::multiprecision::sqrt(x); }
  static Quad cos(const Quad& t) { return boost::multiprecision::cos(t); }
  static Quad sin(const Quad& t) { return boost::multiprecision::sin(t); }
  static Quad trig_err() { return ldexp(Quad(1), -105); }
  static Quad unit() { return ldexp(Quad(1), -113); }
};

template <class R>
R two_sum_err(const R& a, const R& b, const R& s) {
  R bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

template <class R>
struct Cx {
  R re{0}, im{0};
  Cx() = default;
  Cx(R r, R i = R(0)) : re(std::move(r)), im(std::move(i)) {}
  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  friend Cx operator*(const Cx& a, const R& s) { return {a.re * s, a.im * s}; }
  friend Cx operator/(const Cx& a, const Cx& b) {
    R d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Cx operator-() const { return {-re, -im}; }
  R norm() const { return re * re + im * im; }
  R abs() const { return RealOps<R>::sqrt(norm()); }
  Cx conj() const { return {re, -im}; }
};

template <class R>
R abs_up(const R& re, const R& im) {
  using O = RealOps<R>;
  using std::abs;
  if (re == 0) return abs(im);
  if (im == 0) return abs(re);
  return O::up(O::sqrt(O::up(O::up(re * re) + O::up(im * im))));
}

template <class R>
R abs_down(const R& re, const R& im) {
  using O = RealOps<R>;
  using std::abs;
  if (re == 0) return abs(im);
  if (im == 0) return abs(re);
  return O::down(O::sqrt(O::down(O::down(re * re) + O::down(im * im))));
}

template <class R>
R mul_up(const R& a, const R& b) {
  if (a == 0 || b == 0) return R(0);
  R p = RealOps<R>::up(a * b);
  R tiny = std::numeric_limits<double>::denorm_min();
  return p > tiny ? p : tiny;
}

template <class R>
struct CBall {
  Cx<R> c;
  R rad{0};

  static CBall from_rational(const GaussianRational& g) {
    using O = RealOps<R>;
    using std::abs;
    CBall b;
    b.c.re = O::nearest(g.re());
    b.c.im = O::nearest(g.im());
    Rational er = abs(O::to_rational(b.c.re) - g.re()) + abs(O::to_rational(b.c.im) - g.im());
    if (sgn(er) != 0) {
      R e = O::nearest(er);
      b.rad = O::up(O::up(e));
      if (b.rad == 0) b.rad = std::numeric_limits<double>::denorm_min();
    }
    return b;
  }

  static CBall from_ball(const ComplexBall& z) {
    CBall b;
    b.c = {RealOps<R>::from_double(z.center.real()), RealOps<R>::from_double(z.center.imag())};
    b.rad = RealOps<R>::from_double(z.radius);
    return b;
  }

  static CBall unit(double theta) {
    using O = RealOps<R>;
    CBall b;
    R t = O::from_double(theta);
    b.c = {O::cos(t), O::sin(t)};
    b.rad = O::trig_err();
    return b;
  }

  R abs_upper() const { return RealOps<R>::up(abs_up(c.re, c.im) + rad); }
  R abs_lower() const {
    R a = RealOps<R>::down(abs_down(c.re, c.im) - rad);
    return a > 0 ? a : R(0);
  }
  bool contains_zero() const { return abs_lower() == 0; }

  ComplexBall to_ball() const {
    using O = RealOps<R>;
    using std::abs;
    ComplexBall out;
    double re = O::to_double(c.re), im = O::to_double(c.im);
    out.center = {re, im};
    R dr = abs(c.re - O::from_double(re)) + abs(c.im - O::from_double(im));
    double r = O::to_double(O::up(O::up(rad) + O::up(dr)));
    out.radius = RealOps<double>::up(RealOps<double>::up(r));
    return out;
  }

  friend CBall operator+(const CBall& a, const CBall& b) {
    using O = RealOps<R>;
    using std::abs;
    CBall r;
    r.c.re = a.c.re + b.c.re;
    r.c.im = a.c.im + b.c.im;
    R e = abs(two_sum_err(a.c.re, b.c.re, r.c.re)) + abs(two_sum_err(a.c.im, b.c.im, r.c.im));
    r.rad = O::up(O::up(a.rad + b.rad) + O::up(e));
    return r;
  }
  CBall operator-() const { return {-c, rad}; }
  friend CBall operator-(const CBall& a, const CBall& b) { return a + (-b); }
  friend CBall operator*(const CBall& a, const CBall& b) {
    using O = RealOps<R>;
    using std::abs;
    CBall r;
    R p1 = a.c.re * b.c.re, p2 = a.c.im * b.c.im;
    R e1 = O::prod_err(a.c.re, b.c.re, p1), e2 = O::prod_err(a.c.im, b.c.im, p2);
    r.c.re = p1 - p2;
    R e3 = two_sum_err(p1, R(-p2), r.c.re);
    R q1 = a.c.re * b.c.im, q2 = a.c.im * b.c.re;
    R f1 = O::prod_err(a.c.re, b.c.im, q1), f2 = O::prod_err(a.c.im, b.c.re, q2);
    r.c.im = q1 + q2;
    R f3 = two_sum_err(q1, q2, r.c.im);
    R round = O::up(O::up(O::up(abs(e1) + abs(e2)) + O::up(abs(e3) + abs(f1))) + O::up(abs(f2) + abs(f3)));
    R prop = O::up(O::up(mul_up(abs_up(a.c.re, a.c.im), b.rad) + mul_up(abs_up(b.c.re, b.c.im), a.rad)) +
                   mul_up(a.rad, b.rad));
    r.rad = O::up(prop + round);
    return r;
  }
};

/// Horner evaluation of sum coeffs[k] x^k.
template <class R>
CBall<R> horner(const std::vector<CBall<R>>& coeffs, const CBall<R>& x) {
  CBall<R> acc;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

template <class R>
std::vector<CBall<R>> exact_coeffs(const UPoly& f) {
  std::vector<CBall<R>> out;
  for (const auto& c : f.coeffs()) out.push_back(CBall<R>::from_rational(c));
  return out;
}

template <class R>
struct RootDisk {
  Cx<R> c;
  R rad{0};
  int mult = 1;
};

/// Aberth iteration followed by Weierstrass inclusion disks of radius n|W_j|;
/// overlapping disks are merged into clusters. start, if given, seeds the iteration.
template <class R>
std::vector<RootDisk<R>> find_roots(const std::vector<CBall<R>>& coeffs, const std::vector<Cx<R>>* start = nullptr);

extern template std::vector<RootDisk<double>> find_roots(const std::vector<CBall<double>>&,
                                                         const std::vector<Cx<double>>*);
extern template std::vector<RootDisk<Quad>> find_roots(const std::vector<CBall<Quad>>&, const std::vector<Cx<Quad>>*);

/// Position of each disk relative to the unit circle via the reflection pairing.
template <class R>
struct PairingResult {
  std::vector<CircleStatus> status;
  std::vector<int> pairing;
};

template <class R>
PairingResult<R> pair_roots(const std::vector<RootDisk<R>>& roots);

extern template PairingResult<double> pair_roots(const std::vector<RootDisk<double>>&);
extern template PairingResult<Quad> pair_roots(const std::vector<RootDisk<Quad>>&);

}  // namespace toral::detail
