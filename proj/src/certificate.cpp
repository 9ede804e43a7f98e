#include "toral/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "toral/algebra.hpp"
#include "toral/errors.hpp"
#include "toral/parse.hpp"
#include "toral/upoly.hpp"

namespace toral {

namespace {

json scalar(const GaussianRational& g) { return g.to_string(); }
GaussianRational scalar_from(const json& j) { return parse_scalar(j.get<std::string>()); }
MultiPoly poly_from(const json& j) { return parse(j.get<std::string>()); }

json points_json(const std::vector<TorusPoint>& pts) {
  json a = json::array();
  for (const auto& t : pts) a.push_back(to_json(t));
  return a;
}
std::vector<TorusPoint> points_from(const json& j) {
  std::vector<TorusPoint> out;
  for (const auto& t : j) out.push_back(torus_point_from_json(t));
  return out;
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}
Eigen::MatrixXcd matrix_from(const json& j) {
  auto n = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != n) throw DomainError("matrix is not square");
    for (Eigen::Index k = 0; k < n; ++k) {
      const json& e = row.at(static_cast<std::size_t>(k));
      m(i, k) = {e.at(0).get<double>(), e.at(1).get<double>()};
    }
  }
  return m;
}

json exponent_list(const std::vector<Exponent>& es) {
  json a = json::array();
  for (const auto& e : es) a.push_back(e);
  return a;
}

json evidence_json(const Evidence& ev) {
  return std::visit(
      [](const auto& e) -> json {
        using T = std::decay_t<decltype(e)>;
        json d;
        if constexpr (std::is_same_v<T, evidence::NotSymmetric>) {
          d["mismatch"] = exponent_list(e.mismatch);
          d["trace"] = points_json(e.trace);
        } else if constexpr (std::is_same_v<T, evidence::RegularTorusPoint>) {
          d["theta"] = e.theta;
          d["point"] = to_json(e.point);
          d["derivative"] = to_json(e.derivative);
        } else if constexpr (std::is_same_v<T, evidence::FiniteTrace>) {
          d["candidates"] = points_json(e.candidates);
          d["bound"] = e.bound;
        } else if constexpr (std::is_same_v<T, evidence::UnivariateUnimodular>) {
          d["var"] = e.var;
          json r = json::array();
          for (const auto& b : e.roots) r.push_back(to_json(b));
          d["roots"] = r;
        } else {
          json parts = json::array();
          for (const auto& f : e.parts) {
            json fj;
            fj["factor"] = f.factor.to_string();
            fj["region"] = f.region;
            if (!f.roots.empty()) {
              json r = json::array();
              for (const auto& lr : f.roots) r.push_back(to_json(lr.value));
              fj["roots"] = r;
            }
            if (!f.circle_fibers.empty()) {
              json fib = json::array();
              for (const auto& c : f.circle_fibers)
                fib.push_back({{"theta", c.theta}, {"inside", c.inside}, {"on", c.on}, {"outside", c.outside}});
              fj["circle_fibers"] = fib;
              fj["base"] = scalar(f.base);
              fj["base_inside"] = f.base_inside;
            }
            parts.push_back(fj);
          }
          d["parts"] = parts;
        }
        return d;
      },
      ev);
}

VerifyResult fail(std::string kind, std::string why) { return {false, std::move(kind), std::move(why)}; }

bool irreducible(const MultiPoly& p) {
  Factorization f = factor_irreducible(p);
  return f.factors.size() == 1 && f.factors[0].second == 1;
}

// Every point of `need` lies in some ball pair of `have`.
bool covered(const std::vector<TorusPoint>& need, const std::vector<TorusPoint>& have) {
  for (const auto& t : need) {
    bool hit = std::any_of(have.begin(), have.end(), [&](const TorusPoint& h) {
      return std::abs(h.z1.center - t.z1.center) <= h.z1.radius + t.z1.radius &&
             std::abs(h.z2.center - t.z2.center) <= h.z2.radius + t.z2.radius;
    });
    if (!hit) return false;
  }
  return true;
}

bool on_zero_set(const MultiPoly& p, const TorusPoint& t) {
  return evaluate_certified(p, {t.z1, t.z2}).contains_zero();
}

VerifyResult verify_torality(const json& j) {
  const std::string kind = "ToralityCertificate";
  MultiPoly p = poly_from(j.at("p"));
  if (p.nvars() != 2 || p.is_constant()) return fail(kind, "p must be a nonconstant polynomial in z1, z2");
  std::string verdict = j.at("verdict").get<std::string>();
  std::string ek = j.at("evidence_kind").get<std::string>();
  const json& d = j.at("data");
  if (!irreducible(p)) return fail(kind, "p is not irreducible");
  SymmetryResult sym = essential_symmetry(p);

  if (ek == "NotSymmetric") {
    if (verdict != "Atoral") return fail(kind, "NotSymmetric evidence must carry verdict Atoral");
    MultiPoly r = reflect(p);
    std::vector<Exponent> mm;
    for (const auto& e : d.at("mismatch")) mm.push_back(e.get<Exponent>());
    bool shown = false;
    if (mm.size() == 1) {
      shown = p.coefficient(mm[0]).is_zero() != r.coefficient(mm[0]).is_zero();
    } else if (mm.size() == 2) {
      shown = r.coefficient(mm[0]) * p.coefficient(mm[1]) != r.coefficient(mm[1]) * p.coefficient(mm[0]);
    }
    if (!shown) return fail(kind, "mismatch exponents do not separate p from its reflection");
    auto trace = points_from(d.at("trace"));
    for (const auto& t : trace)
      if (!on_zero_set(p, t)) return fail(kind, "trace point is not on Z_p");
    if (!covered(common_torus_zeros(p, r), trace)) return fail(kind, "trace misses a torus zero of p");
    return {true, kind, "reflection is not a multiple of p"};
  }

  if (!sym.symmetric) return fail(kind, "p is not essentially symmetric");
  if (j.contains("tau") && !j.at("tau").is_null() && scalar_from(j.at("tau")) != *sym.tau)
    return fail(kind, "tau does not match reflect(p) / p");

  if (ek == "RegularTorusPoint") {
    if (verdict != "Toral") return fail(kind, "RegularTorusPoint evidence must carry verdict Toral");
    double theta = d.at("theta").get<double>();
    TorusPoint pt = torus_point_from_json(d.at("point"));
    ComplexBall e = unit_point(theta);
    if (std::abs(e.center - pt.z1.center) > e.radius + pt.z1.radius + 1e-15)
      return fail(kind, "z1 is not e^{i theta}");
    if (!on_zero_set(p, pt)) return fail(kind, "point is not on Z_p");
    ComplexBall der = evaluate_certified(derivative(p, 1), {pt.z1, pt.z2});
    if (der.contains_zero()) return fail(kind, "dp/dz2 is not bounded away from 0");
    FiberReport rep = fiber_report(p, theta, 1);
    for (std::size_t k = 0; k < rep.roots.size(); ++k) {
      if (rep.status[k] != CircleStatus::On) continue;
      const ComplexBall& b = rep.roots[k].value;
      if (std::abs(b.center - pt.z2.center) <= b.radius + pt.z2.radius)
        return {true, kind, "regular unimodular fiber root"};
    }
    return fail(kind, "fiber at theta has no certified unimodular root at z2");
  }

  if (ek == "UnivariateUnimodular") {
    if (verdict != "Toral") return fail(kind, "UnivariateUnimodular evidence must carry verdict Toral");
    auto var = d.at("var").get<std::size_t>();
    if (var > 1 || p.depends_on(1 - var)) return fail(kind, "p is not univariate in the stated variable");
    for (const auto& r : locate_roots(to_univariate(p, var)))
      if (r.status != CircleStatus::On) return fail(kind, "a root is not on the unit circle");
    return {true, kind, "every root is unimodular"};
  }

  if (ek == "FiniteTrace") {
    if (verdict != "Atoral") return fail(kind, "FiniteTrace evidence must carry verdict Atoral");
    auto cands = points_from(d.at("candidates"));
    for (const auto& t : cands)
      if (!on_zero_set(p, t)) return fail(kind, "candidate is not on Z_p");
    int bound = d.at("bound").get<int>();
    if (static_cast<int>(cands.size()) > std::max(bound, 0) && bound > 0)
      return fail(kind, "more candidates than the Bezout bound");
    ToralityCertificate again = classify_irreducible(p);
    if (again.verdict != Verdict::Atoral) return fail(kind, "replayed classification is Toral");
    if (const auto* ft = std::get_if<evidence::FiniteTrace>(&again.evidence))
      if (!covered(ft->candidates, cands)) return fail(kind, "candidates miss a torus zero of p");
    return {true, kind, "no arc carries unimodular fiber roots"};
  }

  return fail(kind, "unknown evidence kind " + ek);
}

VerifyResult verify_disjoint(const json& j) {
  const std::string kind = "ToralityCertificate";
  MultiPoly p = poly_from(j.at("p"));
  if (j.at("verdict").get<std::string>() != "Toral") return fail(kind, "BidiskDisjoint must carry verdict Toral");
  Factorization f = factor_irreducible(p);
  std::vector<MultiPoly> listed;
  for (const auto& part : j.at("data").at("parts")) listed.push_back(poly_from(part.at("factor")));
  for (const auto& [g, m] : f.factors) {
    bool found = std::any_of(listed.begin(), listed.end(), [&](const MultiPoly& h) { return h == g; });
    if (!found) return fail(kind, "factor " + g.to_string() + " has no disjointness part");
  }
  DisjointnessResult again = disjoint_from_bidisks(p);
  if (again.status != Tri::True) return fail(kind, "replayed disjointness check is " + to_string(again.status));
  return {true, kind, "Z_p misses both bidisks"};
}

}  // namespace

json to_json(const ComplexBall& b) { return {{"center", {b.center.real(), b.center.imag()}}, {"radius", b.radius}}; }

ComplexBall ball_from_json(const json& j) {
  ComplexBall b;
  b.center = {j.at("center").at(0).get<double>(), j.at("center").at(1).get<double>()};
  b.radius = j.at("radius").get<double>();
  if (!(b.radius >= 0)) throw DomainError("ball radius must be nonnegative");
  return b;
}

json to_json(const TorusPoint& t) { return {{"z1", to_json(t.z1)}, {"z2", to_json(t.z2)}}; }
TorusPoint torus_point_from_json(const json& j) { return {ball_from_json(j.at("z1")), ball_from_json(j.at("z2"))}; }

json to_json(const ToralityCertificate& c) {
  json j;
  j["kind"] = "ToralityCertificate";
  j["p"] = c.p.to_string();
  j["verdict"] = to_string(c.verdict);
  j["evidence_kind"] = evidence_kind(c.evidence);
  j["tau"] = c.tau ? json(scalar(*c.tau)) : json(nullptr);
  j["data"] = evidence_json(c.evidence);
  return j;
}

json to_json(const SetClassification& c) {
  json j;
  j["unit"] = scalar(c.unit);
  json fs = json::array();
  for (const auto& f : c.factors)
    fs.push_back({{"factor", f.factor.to_string()},
                  {"multiplicity", f.multiplicity},
                  {"verdict", to_string(f.certificate.verdict)},
                  {"certificate", to_json(f.certificate)}});
  j["factors"] = fs;
  json ps = json::array();
  for (const auto& pt : c.points) ps.push_back({{"z1", scalar(pt.z1)}, {"z2", scalar(pt.z2)}, {"on_torus", pt.on_torus}});
  j["points"] = ps;
  j["set_verdict"] = to_string(c.set_verdict);
  return j;
}

json to_json(const DisjointnessResult& r) {
  json j;
  j["status"] = to_string(r.status);
  if (r.witness) {
    j["witness"] = to_json(*r.witness);
    j["region"] = r.region;
  }
  if (r.certificate) j["certificate"] = to_json(*r.certificate);
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

json to_json(const TorusIntersection& t) {
  return {{"one_dimensional", t.one_dimensional},
          {"finite_points", points_json(t.finite_points)},
          {"samples", points_json(t.samples)}};
}

json to_json(const DistinguishedResult& r) {
  json j;
  j["status"] = to_string(r.status);
  j["reason"] = r.reason;
  if (r.interior_witness) j["interior_witness"] = to_json(*r.interior_witness);
  if (r.counterexample) j["counterexample"] = to_json(*r.counterexample);
  j["boundary_samples"] = points_json(r.boundary_samples);
  return j;
}

json to_json(const RationalInner& phi) {
  return {{"h", phi.h},
          {"p", phi.p.to_string()},
          {"numerator", phi.numerator.to_string()},
          {"tau", scalar(phi.tau)},
          {"canonical", phi.canonical}};
}

json to_json(const LevelSetReport& r) {
  json j;
  j["alpha"] = scalar(r.alpha);
  j["location"] = to_string(r.location);
  j["verdict"] = to_string(r.verdict);
  j["disjoint_from_disk"] = r.disjoint_from_disk;
  j["disjoint_from_exterior"] = r.disjoint_from_exterior;
  j["level_polynomial"] = r.level_polynomial.to_string();
  if (r.cross_check) j["cross_check"] = to_string(*r.cross_check);
  return j;
}

json to_json(const UniquenessReport& r) {
  return {{"B", r.B.to_string()},
          {"V", r.V.to_string()},
          {"atoral", r.atoral.to_string()},
          {"atoral_torus_points", points_json(r.atoral_torus_points)},
          {"nodes_on_V", r.nodes_on_V},
          {"whole_bidisk", r.whole_bidisk},
          {"note", r.note}};
}

json to_json(const PickProblem& pr) {
  json nodes = json::array(), values = json::array();
  for (const auto& [a, b] : pr.nodes)
    nodes.push_back({to_string(a.re()), to_string(a.im()), to_string(b.re()), to_string(b.im())});
  for (const auto& w : pr.values) values.push_back({to_string(w.re()), to_string(w.im())});
  return {{"nodes", nodes}, {"values", values}};
}

PickProblem pick_problem_from_json(const json& j) {
  auto rat = [](const json& v) {
    GaussianRational g = v.is_string() ? parse_scalar(v.get<std::string>()) : parse_scalar(v.dump());
    if (sgn(g.im()) != 0) throw DomainError("node and value parts must be real rationals");
    return g.re();
  };
  PickProblem pr;
  for (const auto& n : j.at("nodes")) {
    if (n.size() != 4) throw DomainError("a node is [re1, im1, re2, im2]");
    pr.nodes.push_back({GaussianRational(rat(n[0]), rat(n[1])), GaussianRational(rat(n[2]), rat(n[3]))});
  }
  for (const auto& w : j.at("values")) {
    if (w.size() != 2) throw DomainError("a value is [re, im]");
    pr.values.push_back(GaussianRational(rat(w[0]), rat(w[1])));
  }
  pr.validate();
  return pr;
}

json to_json(const AglerCertificate& c, const PickProblem& pr, double s) {
  json j;
  j["kind"] = "AglerCertificate";
  j["problem"] = to_json(pr);
  j["scale"] = s;
  j["Gamma"] = matrix_json(c.Gamma);
  j["Delta"] = matrix_json(c.Delta);
  j["residual"] = c.residual;
  j["min_eig_gamma"] = c.min_eig_gamma;
  j["min_eig_delta"] = c.min_eig_delta;
  return j;
}

VerifyResult verify_certificate(const json& j) {
  std::string kind = j.value("kind", "");
  try {
    if (kind == "AglerCertificate") {
      PickProblem pr = pick_problem_from_json(j.at("problem"));
      AglerCertificate c;
      c.Gamma = matrix_from(j.at("Gamma"));
      c.Delta = matrix_from(j.at("Delta"));
      auto n = static_cast<Eigen::Index>(pr.size());
      if (c.Gamma.rows() != n || c.Delta.rows() != n) return fail(kind, "matrix size differs from node count");
      CertificateCheck chk = check_agler(pr, c, 1e-7, 1e-9, j.value("scale", 1.0));
      if (!chk.ok) return fail(kind, chk.reason);
      std::ostringstream why;
      why << std::setprecision(3) << "residual " << chk.residual << ", min eigenvalues " << chk.min_eig_gamma << " and "
          << chk.min_eig_delta;
      return {true, kind, why.str()};
    }
    if (kind == "ToralityCertificate") {
      if (j.at("evidence_kind").get<std::string>() == "BidiskDisjoint") return verify_disjoint(j);
      return verify_torality(j);
    }
    return fail(kind, "unknown certificate kind");
  } catch (const json::exception& e) {
    return fail(kind, std::string("malformed certificate: ") + e.what());
  } catch (const Error& e) {
    return fail(kind, e.what());
  }
}

}  // namespace toral
