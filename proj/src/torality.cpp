#include "toral/torality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "toral/errors.hpp"

namespace toral {

std::string to_string(Verdict v) { return v == Verdict::Toral ? "Toral" : "Atoral"; }

std::string to_string(SetVerdict v) {
  switch (v) {
    case SetVerdict::Toral: return "Toral";
    case SetVerdict::Atoral: return "Atoral";
    case SetVerdict::Mixed: return "Mixed";
  }
  return "?";
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

std::string evidence_kind(const Evidence& e) {
  struct V {
    std::string operator()(const evidence::NotSymmetric&) const { return "NotSymmetric"; }
    std::string operator()(const evidence::RegularTorusPoint&) const { return "RegularTorusPoint"; }
    std::string operator()(const evidence::FiniteTrace&) const { return "FiniteTrace"; }
    std::string operator()(const evidence::BidiskDisjoint&) const { return "BidiskDisjoint"; }
    std::string operator()(const evidence::UnivariateUnimodular&) const { return "UnivariateUnimodular"; }
  };
  return std::visit(V{}, e);
}

namespace {

void require_two(const MultiPoly& p) {
  if (p.nvars() != 2) throw DomainError("decision procedures need exactly two variables");
}

// Index of the only variable p depends on, or -1.
int univariate_var(const MultiPoly& p) {
  bool a = p.depends_on(0), b = p.depends_on(1);
  if (a && !b) return 0;
  if (b && !a) return 1;
  return -1;
}

// Polynomial used to find the z_{var'}-coordinates of common zeros, where var' = 1 - var.
// Returns nullopt when no common zeros exist.
std::optional<UPoly> eliminant(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
  std::size_t other = 1 - var;
  bool fv = f.degree_in(var) >= 1, gv = g.degree_in(var) >= 1;
  MultiPoly r(2);
  if (fv && gv) {
    r = resultant(f, g, var);
    if (r.is_zero()) throw DomainError("polynomials share a common factor");
  } else if (fv) {
    r = g;
  } else if (gv) {
    r = f;
  } else {
    MultiPoly c = gcd(f, g);
    if (!c.is_constant()) throw DomainError("polynomials share a common factor");
    return std::nullopt;
  }
  if (r.is_constant()) return std::nullopt;
  return to_univariate(r, other);
}

ComplexBall invert_conj(const ComplexBall& b) {
  double c = std::abs(b.center);
  double r = b.radius;
  if (c <= r) throw PrecisionError("cannot invert a ball containing zero");
  ComplexBall out;
  out.center = b.center / (c * c);
  double rad = r / (c * (c - r));
  out.radius = (rad + std::abs(out.center) * 1e-15) * (1 + 1e-12);
  return out;
}

TorusPoint make_point(std::size_t var, const ComplexBall& root, const ComplexBall& other) {
  return var == 1 ? TorusPoint{other, root} : TorusPoint{root, other};
}

constexpr double kPi = std::numbers::pi;

}  // namespace

std::vector<TorusPoint> common_torus_zeros(const MultiPoly& f, const MultiPoly& g) {
  require_two(f);
  require_two(g);
  if (f.is_zero() || g.is_zero()) throw DomainError("common zeros with the zero polynomial");
  if (f.is_constant() || g.is_constant()) return {};
  auto e1 = eliminant(f, g, 1);  // z1 candidates
  auto e2 = eliminant(f, g, 0);  // z2 candidates
  if (!e1 || !e2) return {};
  auto a = unimodular_roots(*e1);
  auto b = unimodular_roots(*e2);
  std::vector<TorusPoint> out;
  for (const auto& x : a)
    for (const auto& y : b)
      if (evaluate_certified(f, {x, y}).contains_zero() && evaluate_certified(g, {x, y}).contains_zero())
        out.push_back({x, y});
  return out;
}

ToralityCertificate classify_irreducible(const MultiPoly& p) {
  require_two(p);
  if (p.is_constant()) throw DomainError("classification needs a nonconstant polynomial");
  ToralityCertificate cert;
  cert.p = p;
  SymmetryResult sym = essential_symmetry(p);
  if (!sym.symmetric) {
    evidence::NotSymmetric ev;
    ev.mismatch = sym.mismatch;
    ev.trace = common_torus_zeros(p, reflect(p));
    cert.verdict = Verdict::Atoral;
    cert.evidence = ev;
    return cert;
  }
  cert.tau = sym.tau;

  int uv = univariate_var(p);
  if (uv >= 0) {
    auto located = locate_roots(to_univariate(p, static_cast<std::size_t>(uv)));
    std::size_t on = 0;
    evidence::UnivariateUnimodular ev;
    ev.var = static_cast<std::size_t>(uv);
    for (const auto& r : located) {
      if (r.status == CircleStatus::On) {
        ++on;
        ev.roots.push_back(r.value);
      }
    }
    if (on == located.size()) {
      cert.verdict = Verdict::Toral;
      cert.evidence = ev;
    } else if (on == 0) {
      cert.verdict = Verdict::Atoral;
      cert.evidence = evidence::FiniteTrace{};
    } else {
      throw DomainError("factor " + p.to_string() +
                        " splits over C into unimodular and non-unimodular components");
    }
    return cert;
  }

  MultiPoly dp = derivative(p, 1);
  ArcDecomposition arcs = torus_breakpoints(p, 1, false);
  for (const auto& arc : arcs.samples(3)) {
    int count = -1;
    std::vector<FiberReport> reps;
    for (double t : arc) {
      FiberReport rep = fiber_report(p, t, 1);
      if (!rep.certified) throw PrecisionError("fiber at theta = " + std::to_string(t) + " not certified");
      if (count >= 0 && rep.unimodular_count != count)
        throw InternalError("unimodular root count changes inside an arc of " + p.to_string());
      count = rep.unimodular_count;
      reps.push_back(std::move(rep));
    }
    if (count <= 0) continue;
    for (const auto& rep : reps) {
      for (std::size_t j = 0; j < rep.roots.size(); ++j) {
        if (rep.status[j] != CircleStatus::On) continue;
        ComplexBall z1 = unit_point(rep.theta);
        ComplexBall d = evaluate_certified(dp, {z1, rep.roots[j].value});
        if (d.contains_zero()) continue;
        evidence::RegularTorusPoint ev;
        ev.theta = rep.theta;
        ev.point = {z1, rep.roots[j].value};
        ev.derivative = d;
        cert.verdict = Verdict::Toral;
        cert.evidence = ev;
        return cert;
      }
    }
    throw PrecisionError("unimodular fiber roots found but no regular point certified");
  }
  evidence::FiniteTrace ev;
  ev.candidates = common_torus_zeros(p, dp);
  ev.bound = p.total_degree() * dp.total_degree();
  cert.verdict = Verdict::Atoral;
  cert.evidence = ev;
  return cert;
}

SetClassification classify(const MultiPoly& p,
                           const std::vector<std::pair<GaussianRational, GaussianRational>>& points) {
  require_two(p);
  if (p.is_constant()) throw DomainError("classification needs a nonconstant polynomial");
  SetClassification out;
  Factorization f = factor_irreducible(p);
  out.unit = f.unit;
  bool any_toral = false, any_atoral = false;
  for (const auto& [g, m] : f.factors) {
    FactorClass fc{g, m, classify_irreducible(g)};
    (fc.certificate.verdict == Verdict::Toral ? any_toral : any_atoral) = true;
    out.factors.push_back(std::move(fc));
  }
  for (const auto& [a, b] : points) {
    PointClass pc{a, b, a.is_unimodular() && b.is_unimodular()};
    (pc.on_torus ? any_toral : any_atoral) = true;
    out.points.push_back(pc);
  }
  out.set_verdict = any_toral && any_atoral ? SetVerdict::Mixed : (any_toral ? SetVerdict::Toral : SetVerdict::Atoral);
  return out;
}

Split toral_atoral_split(const MultiPoly& p) {
  SetClassification c = classify(p);
  Split s{MultiPoly(2, GaussianRational(1)), MultiPoly(2, GaussianRational(1)), c.unit};
  for (const auto& fc : c.factors) {
    MultiPoly pw = pow(fc.factor, static_cast<unsigned>(fc.multiplicity));
    if (fc.certificate.verdict == Verdict::Toral)
      s.toral = s.toral * pw;
    else
      s.atoral = s.atoral * pw;
  }
  return s;
}

FiberCensus fiber_census(const MultiPoly& f, std::size_t var, int per_arc) {
  require_two(f);
  FiberCensus c;
  c.var = var;
  bool sym = essential_symmetry(f).symmetric;
  c.arcs = torus_breakpoints(f, var, !sym);
  for (const auto& arc : c.arcs.samples(per_arc)) {
    int inside = -1;
    for (double t : arc) {
      FiberReport rep;
      try {
        rep = fiber_report(f, t, var);
        // Without symmetry a self-paired root proves nothing; settle it at higher precision.
        if (!sym && rep.unimodular_count > 0) {
          NumericOptions o;
          o.min_bits = 113;
          rep = fiber_report(f, t, var, o);
        }
      } catch (const PrecisionError&) {
        c.complete = false;
        continue;
      }
      if (!rep.certified || (!sym && rep.unimodular_count > 0)) {
        c.complete = false;
        continue;
      }
      if (inside >= 0 && rep.inside_count != inside)
        throw InternalError("inside count changes within an arc of " + f.to_string());
      inside = rep.inside_count;
      c.fibers.push_back({t, rep.inside_count, rep.unimodular_count, rep.outside_count});
      ComplexBall u = unit_point(t);
      for (std::size_t j = 0; j < rep.roots.size(); ++j) {
        if (rep.status[j] == CircleStatus::On) c.on_points.push_back(make_point(var, rep.roots[j].value, u));
        if (rep.status[j] == CircleStatus::Inside && !c.inside_theta) {
          c.inside_theta = t;
          c.inside_point = make_point(var, rep.roots[j].value, u);
        }
      }
    }
  }
  return c;
}

namespace {

struct RegionCheck {
  Tri status = Tri::Unknown;
  std::optional<TorusPoint> witness;  // in the open bidisk, for f itself
  evidence::FactorDisjointness data;
  std::string reason;
};

std::optional<ComplexBall> inside_root(const UPoly& u, bool nonzero) {
  if (u.degree() < 1) return std::nullopt;
  for (const auto& r : locate_roots(squarefree_part(u)))
    if (r.status == CircleStatus::Inside && (!nonzero || r.value.abs_lower() > 0)) return r.value;
  return std::nullopt;
}

std::vector<GaussianRational> base_points(bool punctured) {
  std::vector<GaussianRational> out;
  if (!punctured) out.emplace_back(0);
  const GaussianRational I = GaussianRational::i();
  for (long den : {2L, 3L, 5L, 7L}) {
    for (long num = 1; num < den; ++num) {
      Rational q(num, den);
      out.emplace_back(q);
      out.emplace_back(-q);
      out.push_back(I * GaussianRational(q));
      out.push_back(-I * GaussianRational(q));
    }
  }
  return out;
}

// Decides whether Z_f meets the open bidisk (punctured: away from the coordinate axes).
RegionCheck meets_disk(const MultiPoly& f, bool punctured) {
  RegionCheck out;
  out.data.factor = f;
  if (f.is_constant()) {
    out.status = Tri::True;
    return out;
  }
  const ComplexBall half = ComplexBall::exact(Rational(1, 2));
  int uv = univariate_var(f);
  if (uv >= 0) {
    try {
      out.data.roots = locate_roots(squarefree_part(to_univariate(f, static_cast<std::size_t>(uv))));
    } catch (const PrecisionError& e) {
      out.reason = e.what();
      return out;
    }
    for (const auto& r : out.data.roots) {
      if (r.status == CircleStatus::Inside && (!punctured || r.value.abs_lower() > 0)) {
        out.status = Tri::False;
        out.witness = make_point(static_cast<std::size_t>(uv), r.value, half);
        return out;
      }
      if (r.status == CircleStatus::Unresolved || r.status == CircleStatus::OffCircle) {
        out.reason = "root position not settled";
        return out;
      }
    }
    out.status = Tri::True;
    return out;
  }

  // Base fiber z2 = w0 inside the disk: its roots in z1 inside the disk are witnesses.
  MultiPoly lc1 = coefficients_in(f, 0).back();
  std::optional<GaussianRational> w0;
  for (const auto& w : base_points(punctured)) {
    if (evaluate(lc1, {GaussianRational(0), w}).is_zero()) continue;
    if (punctured && evaluate(f, {GaussianRational(0), w}).is_zero()) continue;
    w0 = w;
    break;
  }
  if (!w0) throw InternalError("no admissible base point");
  out.data.base = *w0;
  try {
    UPoly u = to_univariate(substitute(f, 1, *w0), 0);
    if (auto a = inside_root(u, punctured)) {
      out.status = Tri::False;
      out.witness = TorusPoint{*a, ComplexBall::exact(*w0)};
      return out;
    }
  } catch (const PrecisionError& e) {
    out.reason = e.what();
    return out;
  }

  // Fibers over z1 on the circle: a root z2 inside the disk means Z_f meets the bidisk.
  FiberCensus census = fiber_census(f, 1);
  for (const auto& fc : census.fibers) out.data.circle_fibers.push_back(fc);
  if (census.inside_theta) {
    double t = *census.inside_theta;
    for (int k = 3; k <= 40; ++k) {
      double rho = 1.0 - std::ldexp(1.0, -k);
      GaussianRational z1(Rational(rho * std::cos(t)), Rational(rho * std::sin(t)));
      if (z1.norm2() >= 1) continue;
      MultiPoly g = substitute(f, 0, z1);
      UPoly u = to_univariate(g, 1);
      if (u.degree() != f.degree_in(1)) continue;
      try {
        if (auto b = inside_root(u, punctured)) {
          out.status = Tri::False;
          out.witness = TorusPoint{ComplexBall::exact(z1), *b};
          return out;
        }
      } catch (const PrecisionError&) {
      }
    }
    out.reason = "fiber over the circle has interior roots but no interior witness was certified";
    return out;
  }
  if (!census.complete) {
    out.reason = "fiber census incomplete at available precision";
    return out;
  }
  out.status = Tri::True;
  return out;
}

DisjointnessResult run_disjointness(const MultiPoly& p, bool exterior) {
  require_two(p);
  if (p.is_zero()) throw DomainError("zero polynomial vanishes everywhere");
  DisjointnessResult res;
  res.status = Tri::True;
  if (p.is_constant()) return res;
  Factorization f = factor_irreducible(p);
  std::vector<std::string> unknown;
  for (int pass = 0; pass < (exterior ? 2 : 1); ++pass) {
    for (const auto& [g, m] : f.factors) {
      bool ext = pass == 1;
      RegionCheck rc = meets_disk(ext ? reflect(g) : g, ext);
      rc.data.factor = g;
      rc.data.region = ext ? "exterior" : "disk";
      if (rc.status == Tri::False) {
        res.status = Tri::False;
        res.region = rc.data.region;
        res.witness = ext ? TorusPoint{invert_conj(rc.witness->z1), invert_conj(rc.witness->z2)} : *rc.witness;
        res.reason = "zero of " + g.to_string() + (ext ? " in the exterior bidisk" : " in the open bidisk");
        res.proof.parts.clear();
        return res;
      }
      if (rc.status == Tri::Unknown) {
        res.status = Tri::Unknown;
        unknown.push_back(g.to_string() + ": " + rc.reason);
      }
      res.proof.parts.push_back(std::move(rc.data));
    }
  }
  if (res.status == Tri::Unknown) {
    for (const auto& s : unknown) res.reason += (res.reason.empty() ? "" : "; ") + s;
    res.proof.parts.clear();
  }
  return res;
}

}  // namespace

DisjointnessResult disjoint_from_disk(const MultiPoly& p, double) { return run_disjointness(p, false); }

DisjointnessResult disjoint_from_bidisks(const MultiPoly& p, double) {
  DisjointnessResult r = run_disjointness(p, true);
  if (r.status == Tri::True) {
    ToralityCertificate c;
    c.p = p;
    c.verdict = Verdict::Toral;
    c.evidence = r.proof;
    if (!p.is_zero()) {
      auto s = essential_symmetry(p);
      if (s.symmetric) c.tau = s.tau;
    }
    r.certificate = c;
  }
  return r;
}

TorusIntersection torus_intersection(const MultiPoly& p, int samples_per_arc) {
  require_two(p);
  if (p.is_zero()) throw DomainError("zero polynomial");
  TorusIntersection out;
  if (p.is_constant()) return out;
  auto add_finite = [&](const TorusPoint& t) {
    for (const auto& q : out.finite_points)
      if (std::abs(q.z1.center - t.z1.center) < 1e-12 && std::abs(q.z2.center - t.z2.center) < 1e-12) return;
    out.finite_points.push_back(t);
  };
  for (const auto& [g, m] : factor_irreducible(p).factors) {
    ToralityCertificate c = classify_irreducible(g);
    if (const auto* ns = std::get_if<evidence::NotSymmetric>(&c.evidence)) {
      for (const auto& t : ns->trace) add_finite(t);
    } else if (const auto* ft = std::get_if<evidence::FiniteTrace>(&c.evidence)) {
      for (const auto& t : ft->candidates) add_finite(t);
    } else if (const auto* uu = std::get_if<evidence::UnivariateUnimodular>(&c.evidence)) {
      out.one_dimensional = true;
      for (const auto& r : uu->roots)
        for (int j = 0; j < samples_per_arc; ++j)
          out.samples.push_back(make_point(uu->var, r, unit_point(2 * kPi * (j + 0.5) / samples_per_arc)));
    } else {
      out.one_dimensional = true;
      ArcDecomposition arcs = torus_breakpoints(g, 1, false);
      for (const auto& arc : arcs.samples(samples_per_arc)) {
        for (double t : arc) {
          FiberReport rep = fiber_report(g, t, 1);
          for (std::size_t j = 0; j < rep.roots.size(); ++j)
            if (rep.status[j] == CircleStatus::On) out.samples.push_back({unit_point(t), rep.roots[j].value});
        }
      }
    }
  }
  return out;
}

DistinguishedResult distinguished_variety_check(const MultiPoly& p, double) {
  require_two(p);
  if (p.is_zero() || p.is_constant()) throw DomainError("distinguished variety check needs a nonconstant polynomial");
  DistinguishedResult out;
  bool any_w = false;
  for (const auto& [f, m] : factor_irreducible(p).factors) {
    RegionCheck rc = meets_disk(f, false);
    if (rc.status == Tri::Unknown) {
      out.status = Tri::Unknown;
      out.reason = "cannot decide whether " + f.to_string() + " meets the bidisk: " + rc.reason;
      return out;
    }
    if (rc.status == Tri::True) continue;
    any_w = true;
    if (!out.interior_witness) out.interior_witness = rc.witness;
    int uv = univariate_var(f);
    if (uv >= 0) {
      // W contains {a} x D, whose closure reaches {a} x T.
      out.status = Tri::False;
      std::size_t v = static_cast<std::size_t>(uv);
      out.counterexample = make_point(v, v == 0 ? rc.witness->z1 : rc.witness->z2, ComplexBall::exact(1));
      out.reason = f.to_string() + " has a component {a} x D with |a| < 1";
      return out;
    }
    for (std::size_t var : {std::size_t{1}, std::size_t{0}}) {
      FiberCensus c = fiber_census(f, var);
      if (c.inside_theta) {
        out.status = Tri::False;
        out.counterexample = c.inside_point;
        out.reason = "closure of W meets the boundary off the torus";
        return out;
      }
      if (!c.complete) {
        out.status = Tri::Unknown;
        out.reason = "curve branches not separated at available precision";
        return out;
      }
      if (var == 1)
        for (const auto& t : c.on_points) out.boundary_samples.push_back(t);
    }
  }
  if (!any_w) {
    out.status = Tri::False;
    out.reason = "W is empty: Z_p does not meet the open bidisk";
    return out;
  }
  out.status = Tri::True;
  out.reason = "closure of W meets the boundary only in the torus";
  return out;
}

}  // namespace toral
