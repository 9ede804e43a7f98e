#include "toral/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ball.hpp"
#include "toral/algebra.hpp"
#include "toral/errors.hpp"

namespace toral {
namespace detail {

namespace {

template <class R>
R dist_lower(const Cx<R>& a, const Cx<R>& b) {
  using O = RealOps<R>;
  using std::abs;
  Cx<R> d = a - b;
  R e = abs(two_sum_err(a.re, R(-b.re), d.re)) + abs(two_sum_err(a.im, R(-b.im), d.im));
  R lo = O::down(abs_down(d.re, d.im) - O::up(e));
  return lo > 0 ? lo : R(0);
}

template <class R>
R dist_upper(const Cx<R>& a, const Cx<R>& b) {
  using O = RealOps<R>;
  using std::abs;
  Cx<R> d = a - b;
  R e = abs(two_sum_err(a.re, R(-b.re), d.re)) + abs(two_sum_err(a.im, R(-b.im), d.im));
  return O::up(abs_up(d.re, d.im) + O::up(e));
}

template <class R>
Cx<R> horner_cx(const std::vector<Cx<R>>& a, const Cx<R>& x) {
  Cx<R> acc;
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * x + a[k];
  return acc;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

template <class R>
std::vector<RootDisk<R>> find_roots(const std::vector<CBall<R>>& coeffs_in, const std::vector<Cx<R>>* start) {
  using O = RealOps<R>;
  std::vector<CBall<R>> coeffs = coeffs_in;
  while (!coeffs.empty() && coeffs.back().c.re == 0 && coeffs.back().c.im == 0 && coeffs.back().rad == 0)
    coeffs.pop_back();
  if (coeffs.size() < 2) throw DomainError("root finding needs degree at least 1");
  if (coeffs.back().contains_zero()) throw PrecisionError("leading coefficient enclosure contains zero");

  std::vector<RootDisk<R>> disks;
  // Exact zero roots are split off so the iteration never sees them.
  std::size_t zeros = 0;
  while (zeros < coeffs.size() && coeffs[zeros].c.re == 0 && coeffs[zeros].c.im == 0 && coeffs[zeros].rad == 0)
    ++zeros;
  if (zeros > 0) {
    disks.push_back({Cx<R>(), R(0), static_cast<int>(zeros)});
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(zeros));
  }
  const int m = static_cast<int>(coeffs.size()) - 1;
  if (m >= 1) {
    std::vector<Cx<R>> a, da;
    for (const auto& c : coeffs) a.push_back(c.c);
    for (int k = 1; k <= m; ++k) da.push_back(a[k] * R(k));

    std::vector<Cx<R>> z;
    if (start && static_cast<int>(start->size()) == m) {
      z = *start;
    } else {
      // start on the circle of radius |a0/am|^{1/m}
      double g = std::pow(O::to_double(a[0].abs() / a[m].abs()), 1.0 / m);
      if (!(g > 0) || !std::isfinite(g)) g = 1.0;
      R r0 = O::from_double(g);
      for (int k = 0; k < m; ++k) {
        double t = 2.0 * std::numbers::pi * k / m + 0.7;
        z.emplace_back(r0 * O::from_double(std::cos(t)), r0 * O::from_double(std::sin(t)));
      }
    }
    const R eps = O::unit() * R(8);
    const int maxit = O::bits > 53 ? 800 : 600;
    int settled_passes = 0;
    for (int it = 0; it < maxit && settled_passes < 3; ++it) {
      bool settled = true;
      for (int j = 0; j < m; ++j) {
        Cx<R> pv = horner_cx(a, z[j]);
        if (pv.re == 0 && pv.im == 0) continue;
        Cx<R> dv = horner_cx(da, z[j]);
        Cx<R> s;
        for (int k = 0; k < m; ++k)
          if (k != j) s = s + Cx<R>(R(1)) / (z[j] - z[k]);
        Cx<R> ratio = (dv.re == 0 && dv.im == 0) ? pv : pv / dv;
        Cx<R> corr = ratio / (Cx<R>(R(1)) - ratio * s);
        if (!(corr.re == corr.re) || !(corr.im == corr.im)) corr = Cx<R>(eps, eps);
        z[j] = z[j] - corr;
        if (corr.abs() > eps * (z[j].abs() + eps)) settled = false;
      }
      settled_passes = settled ? settled_passes + 1 : 0;
    }

    // Inclusion radii.
    const R inf = std::numeric_limits<double>::infinity();
    R lc_lo = coeffs.back().abs_lower();
    for (int j = 0; j < m; ++j) {
      CBall<R> x;
      x.c = z[j];
      R num = horner(coeffs, x).abs_upper();
      R den = lc_lo;
      for (int k = 0; k < m && den > 0; ++k)
        if (k != j) den = O::down(den * dist_lower(z[j], z[k]));
      R rad;
      if (num == 0) {
        rad = R(0);
      } else if (den == 0) {
        rad = inf;
      } else {
        rad = O::up(O::up(num / den) * R(m));
      }
      disks.push_back({z[j], rad, 1});
    }
  }

  // Merge overlapping disks into clusters.
  UnionFind uf(disks.size());
  for (std::size_t i = 0; i < disks.size(); ++i)
    for (std::size_t j = i + 1; j < disks.size(); ++j)
      if (dist_lower(disks[i].c, disks[j].c) <= O::up(disks[i].rad + disks[j].rad)) uf.unite(i, j);
  std::vector<std::vector<std::size_t>> groups(disks.size());
  for (std::size_t i = 0; i < disks.size(); ++i) groups[uf.find(i)].push_back(i);
  std::vector<RootDisk<R>> out;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    if (g.size() == 1) {
      out.push_back(disks[g[0]]);
      continue;
    }
    Cx<R> c;
    int mult = 0;
    for (auto i : g) {
      c = c + disks[i].c;
      mult += disks[i].mult;
    }
    c = c * (R(1) / R(static_cast<long>(g.size())));
    R rad(0);
    for (auto i : g) rad = std::max(rad, O::up(dist_upper(c, disks[i].c) + disks[i].rad));
    out.push_back({c, rad, mult});
  }
  std::sort(out.begin(), out.end(), [](const RootDisk<R>& x, const RootDisk<R>& y) {
    if (x.c.re != y.c.re) return x.c.re < y.c.re;
    return x.c.im < y.c.im;
  });
  return out;
}

template std::vector<RootDisk<double>> find_roots(const std::vector<CBall<double>>&, const std::vector<Cx<double>>*);
template std::vector<RootDisk<Quad>> find_roots(const std::vector<CBall<Quad>>&, const std::vector<Cx<Quad>>*);

template <class R>
PairingResult<R> pair_roots(const std::vector<RootDisk<R>>& roots) {
  using O = RealOps<R>;
  using std::abs;
  PairingResult<R> out;
  const std::size_t n = roots.size();
  out.status.assign(n, CircleStatus::Unresolved);
  out.pairing.assign(n, -1);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& d = roots[j];
    R lo = abs_down(d.c.re, d.c.im), hi = abs_up(d.c.re, d.c.im);
    bool finite = d.rad == d.rad && d.rad < R(std::numeric_limits<double>::max());
    if (finite && O::up(hi + d.rad) < 1) out.status[j] = CircleStatus::Inside;
    if (finite && O::down(lo - d.rad) > 1) out.status[j] = CircleStatus::Outside;
    if (!finite || lo <= d.rad) continue;
    R dlo = O::down(O::down(lo * lo) - O::up(d.rad * d.rad));
    if (dlo <= 0) continue;
    R dup = O::up(O::up(hi * hi) - O::down(d.rad * d.rad));
    R dmid = d.c.norm() - d.rad * d.rad;
    Cx<R> ic = d.c * (R(1) / dmid);
    R icr = O::up(O::up(d.rad / dlo) + O::up(hi * O::up(R(1) / dlo - R(1) / dup)));
    icr = O::up(icr + O::up(ic.abs() * O::unit() * R(16)));
    std::vector<std::size_t> hits;
    for (std::size_t k = 0; k < n; ++k)
      if (dist_lower(ic, roots[k].c) <= O::up(icr + roots[k].rad)) hits.push_back(k);
    bool own = std::find(hits.begin(), hits.end(), j) != hits.end();
    if (hits.size() == 1) out.pairing[j] = static_cast<int>(hits[0]);
    if (out.status[j] != CircleStatus::Unresolved) continue;
    if (hits.size() == 1 && own && d.mult == 1) {
      out.status[j] = CircleStatus::On;
    } else if (!own) {
      out.status[j] = CircleStatus::OffCircle;
    }
  }
  return out;
}

template PairingResult<double> pair_roots(const std::vector<RootDisk<double>>&);
template PairingResult<Quad> pair_roots(const std::vector<RootDisk<Quad>>&);

}  // namespace detail

using detail::CBall;
using detail::Quad;
using detail::RealOps;

ComplexBall ComplexBall::exact(const GaussianRational& g) { return CBall<double>::from_rational(g).to_ball(); }

bool ComplexBall::contains(std::complex<double> z) const {
  detail::Cx<double> a(center.real(), center.imag()), b(z.real(), z.imag());
  return detail::dist_lower(a, b) <= radius;
}

double ComplexBall::abs_upper() const {
  return RealOps<double>::up(detail::abs_up(center.real(), center.imag()) + radius);
}

double ComplexBall::abs_lower() const {
  double a = RealOps<double>::down(detail::abs_down(center.real(), center.imag()) - radius);
  return a > 0 ? a : 0.0;
}

ComplexBall unit_point(double theta) { return CBall<double>::unit(theta).to_ball(); }

namespace {


template <class R>
CBall<R> eval_ball(const MultiPoly& p, const std::vector<CBall<R>>& pt) {
  std::vector<int> maxdeg(p.nvars(), 0);
  for (const auto& [e, c] : p.terms())
    for (std::size_t k = 0; k < e.size(); ++k) maxdeg[k] = std::max(maxdeg[k], e[k]);
  std::vector<std::vector<CBall<R>>> pw(p.nvars());
  for (std::size_t k = 0; k < p.nvars(); ++k) {
    CBall<R> one;
    one.c = {R(1), R(0)};
    pw[k].push_back(one);
    for (int j = 1; j <= maxdeg[k]; ++j) pw[k].push_back(pw[k].back() * pt[k]);
  }
  CBall<R> acc;
  for (const auto& [e, c] : p.terms()) {
    CBall<R> t = CBall<R>::from_rational(c);
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] > 0) t = t * pw[k][e[k]];
    acc = acc + t;
  }
  return acc;
}

template <class R>
std::vector<CertifiedRoot> to_certified(const std::vector<detail::RootDisk<R>>& disks) {
  std::vector<CertifiedRoot> out;
  for (const auto& d : disks) {
    CBall<R> b;
    b.c = d.c;
    b.rad = d.rad;
    out.push_back({b.to_ball(), d.mult});
  }
  return out;
}

bool all_finite(const std::vector<CertifiedRoot>& r) {
  return std::all_of(r.begin(), r.end(), [](const CertifiedRoot& x) { return std::isfinite(x.value.radius); });
}

template <class R>
std::vector<CBall<R>> fiber_coeffs(const MultiPoly& p, double theta, std::size_t var) {
  std::size_t other = 1 - var;
  CBall<R> z = CBall<R>::unit(theta);
  std::vector<CBall<R>> out;
  for (const auto& c : coefficients_in(p, var)) out.push_back(detail::horner(detail::exact_coeffs<R>(to_univariate(c, other)), z));
  return out;
}

template <class R>
FiberReport fiber_at(const MultiPoly& p, double theta, std::size_t var) {
  FiberReport rep;
  rep.theta = theta;
  rep.var = var;
  rep.precision_bits = RealOps<R>::bits;
  auto coeffs = fiber_coeffs<R>(p, theta, var);
  if (coeffs.size() < 2) {
    rep.certified = true;
    return rep;
  }
  auto disks = detail::find_roots(coeffs);
  auto pr = detail::pair_roots(disks);
  rep.roots = to_certified(disks);
  rep.status = pr.status;
  rep.pairing = pr.pairing;
  rep.certified = true;
  for (auto s : pr.status) {
    if (s == CircleStatus::On) ++rep.unimodular_count;
    if (s == CircleStatus::Inside) ++rep.inside_count;
    if (s == CircleStatus::Outside) ++rep.outside_count;
    if (s == CircleStatus::Unresolved || s == CircleStatus::OffCircle) rep.certified = false;
  }
  return rep;
}

}  // namespace

ComplexBall evaluate_certified(const MultiPoly& p, const std::vector<ComplexBall>& point) {
  if (point.size() != p.nvars()) throw DomainError("point length does not match the variable count");
  std::vector<CBall<double>> pt;
  for (const auto& b : point) pt.push_back(CBall<double>::from_ball(b));
  return eval_ball(p, pt).to_ball();
}

std::vector<CertifiedRoot> roots_certified(const std::vector<ComplexBall>& coeffs, int precision_bits) {
  if (precision_bits > 53) {
    std::vector<CBall<Quad>> c;
    for (const auto& b : coeffs) c.push_back(CBall<Quad>::from_ball(b));
    return to_certified(detail::find_roots(c));
  }
  std::vector<CBall<double>> c;
  for (const auto& b : coeffs) c.push_back(CBall<double>::from_ball(b));
  return to_certified(detail::find_roots(c));
}

std::vector<CertifiedRoot> roots_certified(const UPoly& f, int precision_bits) {
  if (f.degree() < 1) throw DomainError("root finding needs degree at least 1");
  if (precision_bits > 53) return to_certified(detail::find_roots(detail::exact_coeffs<Quad>(f)));
  return to_certified(detail::find_roots(detail::exact_coeffs<double>(f)));
}

std::vector<ComplexBall> unimodular_roots(const UPoly& q_in) {
  if (q_in.is_zero()) throw DomainError("unimodular roots of the zero polynomial");
  UPoly q = q_in.divide_by_x_power(q_in.low_order());
  if (q.degree() < 1) return {};
  UPoly g = gcd(q, q.reflect());
  if (g.degree() < 1) return {};
  g = squarefree_part(g);
  auto attempt = [&](auto tag) -> std::optional<std::vector<ComplexBall>> {
    using R = decltype(tag);
    auto disks = detail::find_roots(detail::exact_coeffs<R>(g));
    auto pr = detail::pair_roots(disks);
    std::vector<ComplexBall> out;
    for (std::size_t j = 0; j < disks.size(); ++j) {
      if (pr.status[j] == CircleStatus::Unresolved) return std::nullopt;
      if (pr.status[j] == CircleStatus::On) {
        CBall<R> b;
        b.c = disks[j].c;
        b.rad = disks[j].rad;
        out.push_back(b.to_ball());
      }
    }
    return out;
  };
  if (auto r = attempt(double{})) return *r;
  if (auto r = attempt(Quad{})) return *r;
  throw PrecisionError("unimodular roots not separated at 113 bits");
}

std::vector<LocatedRoot> locate_roots(const UPoly& q_in) {
  if (q_in.degree() < 1) return {};
  std::vector<LocatedRoot> out;
  int z = q_in.low_order();
  if (z > 0) out.push_back({ComplexBall{}, CircleStatus::Inside});
  UPoly q = q_in.divide_by_x_power(z);
  if (q.degree() < 1) return out;
  std::vector<ComplexBall> unim = unimodular_roots(q);
  auto attempt = [&](auto tag) -> std::optional<std::vector<LocatedRoot>> {
    using R = decltype(tag);
    auto disks = detail::find_roots(detail::exact_coeffs<R>(q));
    auto pr = detail::pair_roots(disks);
    std::vector<LocatedRoot> res;
    for (std::size_t j = 0; j < disks.size(); ++j) {
      CBall<R> b;
      b.c = disks[j].c;
      b.rad = disks[j].rad;
      ComplexBall cb = b.to_ball();
      CircleStatus s = pr.status[j];
      if (s == CircleStatus::Inside || s == CircleStatus::Outside) {
        res.push_back({cb, s});
        continue;
      }
      if (disks[j].mult != 1 || !std::isfinite(cb.radius)) return std::nullopt;
      // A simple root straddling the circle is unimodular iff some certified
      // unimodular root meets its disk and no other isolating disk; otherwise
      // the side needs more precision.
      auto meets = [](const ComplexBall& a, const ComplexBall& b) {
        double d = std::abs(a.center - b.center) * (1 - 1e-15);
        return d <= a.radius + b.radius;
      };
      bool holds = false;
      for (const auto& u : unim) {
        if (!meets(u, cb)) continue;
        bool alone = true;
        for (std::size_t k = 0; k < disks.size() && alone; ++k) {
          if (k == j) continue;
          CBall<R> o;
          o.c = disks[k].c;
          o.rad = disks[k].rad;
          alone = !meets(u, o.to_ball());
        }
        holds = holds || alone;
      }
      if (!holds) return std::nullopt;
      res.push_back({cb, CircleStatus::On});
    }
    return res;
  };
  if (auto r = attempt(double{})) {
    out.insert(out.end(), r->begin(), r->end());
    return out;
  }
  if (auto r = attempt(Quad{})) {
    out.insert(out.end(), r->begin(), r->end());
    return out;
  }
  throw PrecisionError("root positions relative to the unit circle not settled at 113 bits");
}

FiberReport fiber_report(const MultiPoly& p, double theta, std::size_t var, const NumericOptions& opt) {
  if (p.nvars() != 2) throw DomainError("fiber analysis needs two variables");
  if (var > 1) throw DomainError("fiber variable out of range");
  bool symmetric = !p.is_zero() && essential_symmetry(p).symmetric;
  FiberReport rep;
  bool done = false;
  if (opt.min_bits <= 53) {
    try {
      rep = fiber_at<double>(p, theta, var);
      done = rep.certified && all_finite(rep.roots);
    } catch (const PrecisionError&) {
      if (opt.max_bits <= 53) throw;
    }
  }
  if (!done && opt.max_bits > 53) {
    rep = fiber_at<Quad>(p, theta, var);
    if (!all_finite(rep.roots)) throw PrecisionError("fiber roots not separated at 113 bits");
  }
  rep.heuristic = !symmetric;
  return rep;
}

FiberReport fiber_unimodular_roots(const MultiPoly& p, double theta, double tol) {
  ArcDecomposition arcs = torus_breakpoints(p, 1, false, tol);
  if (arcs.near_breakpoint(theta, tol)) throw DomainError("theta lies within tolerance of a breakpoint");
  return fiber_report(p, theta, 1);
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double normalize_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

void add_breakpoints(ArcDecomposition& out, const UPoly& q, BreakpointSource src, double exclusion) {
  if (q.degree() < 1) return;
  for (const auto& b : unimodular_roots(q)) {
    Breakpoint bp;
    bp.theta = normalize_angle(std::atan2(b.center.imag(), b.center.real()));
    double mod = b.abs_lower();
    double hw = (mod > b.radius) ? std::asin(std::min(1.0, b.radius / mod)) : std::numbers::pi;
    bp.halfwidth = std::max(hw * (1 + 1e-9) + 1e-15, exclusion);
    bp.source = src;
    bp.point = b;
    out.breakpoints.push_back(bp);
  }
}

}  // namespace

std::vector<std::pair<double, double>> ArcDecomposition::arcs() const {
  if (breakpoints.empty()) return {{0.0, kTwoPi}};
  std::vector<std::pair<double, double>> iv;
  for (const auto& b : breakpoints) iv.emplace_back(b.theta - b.halfwidth, b.theta + b.halfwidth);
  std::sort(iv.begin(), iv.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& x : iv) {
    if (!merged.empty() && x.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, x.second);
    else
      merged.push_back(x);
  }
  // wrap-around
  while (merged.size() > 1 && merged.back().second >= merged.front().first + kTwoPi) {
    merged.front().first = std::min(merged.front().first, merged.back().first - kTwoPi);
    merged.front().second = std::max(merged.front().second, merged.back().second - kTwoPi);
    merged.pop_back();
  }
  if (merged.front().second - merged.front().first >= kTwoPi) return {};
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) out.emplace_back(merged[i].second, merged[i + 1].first);
  double a = merged.back().second, b = merged.front().first + kTwoPi;
  if (b > a) out.emplace_back(a, b);
  return out;
}

std::vector<std::vector<double>> ArcDecomposition::samples(int k) const {
  std::vector<std::vector<double>> out;
  bool whole = breakpoints.empty();
  for (const auto& [a, b] : arcs()) {
    std::vector<double> s;
    for (int j = 0; j < k; ++j) {
      double t = whole ? a + (b - a) * (j + 0.5) / k + 0.1 : a + (b - a) * (j + 1) / (k + 1);
      s.push_back(normalize_angle(t));
    }
    out.push_back(std::move(s));
  }
  return out;
}

bool ArcDecomposition::near_breakpoint(double theta, double tol) const {
  for (const auto& b : breakpoints) {
    double d = std::abs(normalize_angle(theta - b.theta));
    d = std::min(d, kTwoPi - d);
    if (d <= b.halfwidth + tol) return true;
  }
  return false;
}

ArcDecomposition torus_breakpoints(const MultiPoly& p, std::size_t var, bool include_trace, double exclusion) {
  if (p.nvars() != 2) throw DomainError("torus breakpoints need two variables");
  if (var > 1) throw DomainError("variable out of range");
  if (p.degree_in(var) < 1) throw DomainError("polynomial has no positive degree in " + variable_name(var));
  const std::size_t other = 1 - var;
  ArcDecomposition out;
  out.var = var;
  add_breakpoints(out, to_univariate(coefficients_in(p, var).back(), other), BreakpointSource::LeadingCoefficient,
                  exclusion);
  if (p.degree_in(var) >= 2) {
    MultiPoly disc = resultant(p, derivative(p, var), var);
    if (disc.is_zero()) throw DomainError("polynomial is not squarefree in " + variable_name(var));
    add_breakpoints(out, to_univariate(disc, other), BreakpointSource::Discriminant, exclusion);
  }
  if (include_trace) {
    MultiPoly pt = reflect(p);
    UPoly trace;
    if (pt.degree_in(var) >= 1) {
      MultiPoly r = resultant(p, pt, var);
      if (r.is_zero()) throw DomainError("polynomial shares a factor with its reflection");
      trace = to_univariate(r, other);
    } else {
      trace = to_univariate(pt, other);
    }
    add_breakpoints(out, trace, BreakpointSource::TorusTrace, exclusion);
  }
  std::sort(out.breakpoints.begin(), out.breakpoints.end(),
            [](const Breakpoint& a, const Breakpoint& b) { return a.theta < b.theta; });
  return out;
}

Eigen::MatrixXcd nearest_psd(const Eigen::MatrixXcd& m) {
  if (!m.allFinite()) throw DomainError("matrix has non-finite entries");
  Eigen::MatrixXcd h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXcd r = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  return (r + r.adjoint()) / 2.0;
}

}  // namespace toral
