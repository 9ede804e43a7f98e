#include "toral/inner.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "toral/algebra.hpp"
#include "toral/errors.hpp"

namespace toral {

namespace {

MultiPoly numerator_of(const MultiPoly& p, const Exponent& h) { return multiply_monomial(reflect(p), h); }

std::string point_string(const TorusPoint& t) {
  auto c = [](const ComplexBall& b) {
    return "(" + std::to_string(b.center.real()) + (b.center.imag() < 0 ? "" : "+") + std::to_string(b.center.imag()) +
           "i)";
  };
  return c(t.z1) + ", " + c(t.z2);
}

}  // namespace

std::string to_string(Location l) {
  switch (l) {
    case Location::InDisk: return "InDisk";
    case Location::OnCircle: return "OnCircle";
    case Location::InExterior: return "InExterior";
  }
  return "?";
}

RationalInner make_inner(const MultiPoly& p, const Exponent& h, bool stability_attested) {
  if (p.is_zero()) throw DomainError("denominator is zero");
  if (h.size() != p.nvars()) throw DomainError("monomial exponent has the wrong length");
  for (int e : h)
    if (e < 0) throw DomainError("monomial exponent must be nonnegative");
  if (!stability_attested) {
    if (p.nvars() != 2) throw DomainError("stability can only be verified for two variables; attest it instead");
    DisjointnessResult d = disjoint_from_disk(p);
    if (d.status == Tri::False)
      throw DomainError("denominator vanishes in the bidisk at " + point_string(*d.witness));
    if (d.status == Tri::Unknown) throw PrecisionError("cannot verify that the denominator is stable: " + d.reason);
  }
  RationalInner phi;
  phi.h = h;
  phi.p = p;
  phi.numerator = numerator_of(p, h);
  return phi;
}

RationalInner pad(const RationalInner& phi, const MultiPoly& r) {
  SymmetryResult s = essential_symmetry(r);
  if (!s.symmetric) throw DomainError("padding factor " + r.to_string() + " is not essentially symmetric");
  RationalInner out = phi;
  out.p = phi.p * r;
  out.numerator = numerator_of(out.p, out.h);
  out.canonical = false;
  return out;
}

RationalInner canonicalize(const RationalInner& phi) {
  if (phi.p.nvars() != 2) throw DomainError("canonical form needs factorization, available for two variables");
  RationalInner out;
  out.h = phi.h;
  GaussianRational tau = phi.tau;
  MultiPoly rest(2, GaussianRational(1));
  if (phi.p.is_constant()) {
    GaussianRational c = phi.p.constant_term();
    tau = tau * c.conj() / c;
  } else {
    Factorization f = factor_irreducible(phi.p);
    tau = tau * f.unit.conj() / f.unit;
    for (const auto& [g, m] : f.factors) {
      SymmetryResult s = essential_symmetry(g);
      if (s.symmetric)
        tau = tau * s.tau->pow(static_cast<unsigned>(m));
      else
        rest = rest * pow(g, static_cast<unsigned>(m));
    }
  }
  out.p = rest;
  out.numerator = numerator_of(rest, out.h);
  out.tau = tau;
  out.canonical = true;
  return out;
}

std::optional<GaussianRational> essentially_equal(const RationalInner& phi, const RationalInner& psi) {
  RationalInner a = canonicalize(phi), b = canonicalize(psi);
  if (a.h != b.h || !(a.p == b.p)) return std::nullopt;
  return a.tau / b.tau;
}

std::vector<TorusPoint> singular_set(const RationalInner& phi) {
  RationalInner c = phi.canonical ? phi : canonicalize(phi);
  if (c.p.is_constant()) return {};
  return common_torus_zeros(c.p, reflect(c.p));
}

LevelSetReport level_set_classify(const RationalInner& phi, const GaussianRational& alpha) {
  LevelSetReport r;
  r.alpha = alpha;
  Rational n = alpha.norm2();
  r.location = n < 1 ? Location::InDisk : (n == 1 ? Location::OnCircle : Location::InExterior);
  r.verdict = r.location == Location::OnCircle ? Verdict::Toral : Verdict::Atoral;
  r.disjoint_from_exterior = r.location != Location::InExterior;
  r.disjoint_from_disk = r.location != Location::InDisk;

  RationalInner c = phi.canonical ? phi : canonicalize(phi);
  r.level_polynomial = c.numerator * c.tau - c.p * alpha;
  if (r.level_polynomial.is_zero()) throw DomainError("phi is the constant alpha");
  if (!r.level_polynomial.is_constant() && c.p.nvars() == 2) {
    r.cross_check = classify(r.level_polynomial).set_verdict;
    SetVerdict expect = r.verdict == Verdict::Toral ? SetVerdict::Toral : SetVerdict::Atoral;
    if (*r.cross_check != expect)
      throw InternalError("level set of " + r.level_polynomial.to_string() + " classified " +
                          to_string(*r.cross_check) + ", expected " + to_string(expect));
  }
  return r;
}

InnerSampleReport verify_inner(const RationalInner& phi, int samples, std::uint64_t seed, double exclusion) {
  InnerSampleReport rep;
  std::vector<TorusPoint> sing = phi.p.nvars() == 2 ? singular_set(phi) : std::vector<TorusPoint>{};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::size_t n = phi.p.nvars();
  for (int k = 0; k < samples; ++k) {
    std::vector<ComplexBall> pt;
    for (std::size_t j = 0; j < n; ++j) pt.push_back(unit_point(angle(rng)));
    bool near = false;
    for (const auto& s : sing)
      if (std::abs(pt[0].center - s.z1.center) < exclusion + s.z1.radius &&
          std::abs(pt[1].center - s.z2.center) < exclusion + s.z2.radius)
        near = true;
    if (near) continue;
    ComplexBall num = evaluate_certified(phi.numerator, pt), den = evaluate_certified(phi.p, pt);
    if (den.contains_zero()) continue;
    double dev = std::abs(std::abs(num.center) / std::abs(den.center) - 1.0);
    double hi = num.abs_upper() / den.abs_lower(), lo = num.abs_lower() / den.abs_upper();
    rep.max_deviation = std::max(rep.max_deviation, dev);
    rep.max_radius_bound = std::max(rep.max_radius_bound, (hi - lo) * (1 + 1e-12));
    ++rep.samples_used;
  }
  return rep;
}

}  // namespace toral
