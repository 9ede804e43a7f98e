#include <chrono>
#include <cmath>
#include <random>

#include "doctest.h"
#include "toral/algebra.hpp"
#include "toral/errors.hpp"
#include "toral/parse.hpp"
#include "toral/torality.hpp"

using namespace toral;

namespace {
MultiPoly P(const char* s) { return parse(s); }

bool on_torus_by_modulus(const TorusPoint& t) {
  return std::abs(std::abs(t.z1.center) - 1) <= t.z1.radius + 1e-12 &&
         std::abs(std::abs(t.z2.center) - 1) <= t.z2.radius + 1e-12;
}

// Independent check: |p| at the center is tiny and the enclosure contains 0.
bool lies_on(const MultiPoly& p, const TorusPoint& t) {
  ComplexBall c1{t.z1.center, 0}, c2{t.z2.center, 0};
  return std::abs(evaluate_certified(p, {c1, c2}).center) <= 1e-10 &&
         evaluate_certified(p, {t.z1, t.z2}).contains_zero();
}

template <class F>
double seconds(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}
}  // namespace

TEST_CASE("classification table") {
  struct Row {
    const char* p;
    SetVerdict v;
  };
  for (Row r : {Row{"z1 - z2", SetVerdict::Toral}, Row{"z1*z2 - 1", SetVerdict::Toral},
                Row{"2 - z1 - z2", SetVerdict::Atoral}, Row{"2*z1^2 - 5*z1 + 2", SetVerdict::Atoral},
                Row{"z1 - 1", SetVerdict::Toral}, Row{"z1 - 2", SetVerdict::Atoral}, Row{"z1", SetVerdict::Atoral},
                Row{"(z1 - z2)*(2 - z1 - z2)", SetVerdict::Mixed}, Row{"(z1*z2 - 1)*(z1 - z2)", SetVerdict::Toral}}) {
    CAPTURE(r.p);
    double t = seconds([&] { CHECK(classify(P(r.p)).set_verdict == r.v); });
    CHECK(t < 1.0);
  }
}

TEST_CASE("evidence kinds") {
  auto c = classify_irreducible(P("z1 - z2"));
  CHECK(c.verdict == Verdict::Toral);
  REQUIRE(evidence_kind(c.evidence) == "RegularTorusPoint");
  auto& rp = std::get<evidence::RegularTorusPoint>(c.evidence);
  CHECK(lies_on(P("z1 - z2"), rp.point));
  CHECK(!rp.derivative.contains_zero());

  c = classify_irreducible(P("2 - z1 - z2"));
  CHECK(c.verdict == Verdict::Atoral);
  CHECK(evidence_kind(c.evidence) == "NotSymmetric");
  CHECK(!std::get<evidence::NotSymmetric>(c.evidence).mismatch.empty());

  c = classify_irreducible(P("z1 - 1"));
  CHECK(evidence_kind(c.evidence) == "UnivariateUnimodular");
  c = classify_irreducible(P("z1 - 2"));
  CHECK(c.verdict == Verdict::Atoral);
  CHECK(evidence_kind(c.evidence) == "NotSymmetric");
  c = classify_irreducible(P("z1"));
  CHECK(c.verdict == Verdict::Atoral);
}

TEST_CASE("symmetric atoral factor gets a finite trace") {
  // z1 z2 (4 - 2cos t1 - 2cos t2) on the torus: vanishes only at (1,1)
  MultiPoly p = P("z1^2*z2 + z1*z2^2 + z1 + z2 - 4*z1*z2");
  REQUIRE(essential_symmetry(p).symmetric);
  REQUIRE(factor_irreducible(p).factors.size() == 1);
  auto c = classify_irreducible(p);
  CHECK(c.verdict == Verdict::Atoral);
  REQUIRE(evidence_kind(c.evidence) == "FiniteTrace");
  auto& ft = std::get<evidence::FiniteTrace>(c.evidence);
  CHECK(static_cast<int>(ft.candidates.size()) <= ft.bound);
  bool has11 = false;
  for (const auto& t : ft.candidates) {
    CHECK(lies_on(p, t));
    CHECK(on_torus_by_modulus(t));
    has11 = has11 || (t.z1.contains({1, 0}) && t.z2.contains({1, 0}));
  }
  CHECK(has11);
}

TEST_CASE("split examples") {
  Split s = toral_atoral_split(P("(z1 - z2)*(2 - z1 - z2)"));
  CHECK(s.toral == P("z1 - z2"));
  CHECK(s.atoral == P("z1 + z2 - 2"));
  CHECK(s.unit == GaussianRational(-1));

  s = toral_atoral_split(P("z1*z2 - 1"));
  CHECK(s.toral == P("z1*z2 - 1"));
  CHECK(s.atoral == P("1"));

  s = toral_atoral_split(P("2 - z1 - z2"));
  CHECK(s.toral == P("1"));
  CHECK(s.atoral == P("z1 + z2 - 2"));
  CHECK(s.unit == GaussianRational(-1));
}

TEST_CASE("bidisk disjointness") {
  auto r = disjoint_from_bidisks(P("z1*z2 - 1"));
  CHECK(r.status == Tri::True);
  REQUIRE(r.certificate);
  CHECK(evidence_kind(r.certificate->evidence) == "BidiskDisjoint");

  r = disjoint_from_bidisks(P("2 - z1 - z2"));
  CHECK(r.status == Tri::False);
  REQUIRE(r.witness);
  CHECK(r.region == "exterior");
  CHECK(r.witness->z1.contains({4, 0}));
  CHECK(r.witness->z2.contains({-2, 0}));

  r = disjoint_from_bidisks(P("z1 - z2"));
  CHECK(r.status == Tri::False);
  REQUIRE(r.witness);
  CHECK(r.region == "disk");
  CHECK(r.witness->z1.contains({0, 0}));
  CHECK(r.witness->z2.contains({0, 0}));

  // stable denominator: no zeros in the closed-off disk region
  CHECK(disjoint_from_disk(P("2 - z1 - z2")).status == Tri::True);
  CHECK(disjoint_from_disk(P("1 - 2*z1")).status == Tri::False);
  CHECK(disjoint_from_disk(P("3 - z1*z2 - z1")).status == Tri::True);
}

TEST_CASE("disjointness witnesses are zeros") {
  for (const char* s : {"2 - z1 - z2", "z1 - z2", "z1^2 - z2", "1 - 2*z1", "4*z1*z2 - 1", "z1 + z2 + 3",
                        "z1*z2 - 1/4", "z1 - 3*z2^2"}) {
    CAPTURE(s);
    MultiPoly p = P(s);
    auto r = disjoint_from_bidisks(p);
    if (r.status != Tri::False) continue;
    REQUIRE(r.witness);
    CHECK(evaluate_certified(p, {r.witness->z1, r.witness->z2}).contains_zero());
    if (r.region == "disk") {
      CHECK(r.witness->z1.abs_upper() < 1);
      CHECK(r.witness->z2.abs_upper() < 1);
    } else {
      CHECK(r.witness->z1.abs_lower() > 1);
      CHECK(r.witness->z2.abs_lower() > 1);
    }
  }
}

TEST_CASE("torus intersection") {
  auto t = torus_intersection(P("2 - z1 - z2"));
  CHECK(!t.one_dimensional);
  REQUIRE(t.finite_points.size() == 1);
  CHECK(t.finite_points[0].z1.contains({1, 0}));
  CHECK(t.finite_points[0].z2.contains({1, 0}));

  t = torus_intersection(P("z1 - z2"));
  CHECK(t.one_dimensional);
  CHECK(t.samples.size() >= 8);
  for (const auto& s : t.samples) {
    CHECK(lies_on(P("z1 - z2"), s));
    CHECK(on_torus_by_modulus(s));
  }

  t = torus_intersection(P("2*z1^2 - 5*z1 + 2"));
  CHECK(!t.one_dimensional);
  CHECK(t.finite_points.empty());

  t = torus_intersection(P("z1 - i"));
  CHECK(t.one_dimensional);
  for (const auto& s : t.samples) CHECK(s.z1.contains({0, 1}));
}

TEST_CASE("distinguished varieties") {
  for (const char* s : {"z1 - z2", "z1^2 - z2"}) {
    CAPTURE(s);
    DistinguishedResult r;
    double t = seconds([&] { r = distinguished_variety_check(P(s)); });
    CHECK(r.status == Tri::True);
    CHECK(!r.boundary_samples.empty());
    for (const auto& b : r.boundary_samples) CHECK(on_torus_by_modulus(b));
    CHECK(t < 1.0);
  }
  for (const char* s : {"2 - z1 - z2", "z1*z2 - 1"}) {
    CAPTURE(s);
    auto r = distinguished_variety_check(P(s));
    CHECK(r.status == Tri::False);
    CHECK(r.reason.find("empty") != std::string::npos);
  }
  // meets the bidisk but also exits through {|z1| = 1, |z2| < 1}
  auto r = distinguished_variety_check(P("2*z2 - z1"));
  CHECK(r.status == Tri::False);
  REQUIRE(r.counterexample);
  CHECK(evaluate_certified(P("2*z2 - z1"), {r.counterexample->z1, r.counterexample->z2}).contains_zero());
  r = distinguished_variety_check(P("z1"));
  CHECK(r.status == Tri::False);
  REQUIRE(r.counterexample);
}

TEST_CASE("replay on random products of library factors") {
  const char* toral[] = {"z1 - z2", "z1*z2 - 1", "z1 - 1", "z2 + 1", "z1 + i*z2"};
  const char* atoral[] = {"2 - z1 - z2", "z1 - 2", "z1", "z2 - 1/3", "3 + z1*z2"};
  std::mt19937_64 rng(17);
  for (int it = 0; it < 50; ++it) {
    MultiPoly p(2, GaussianRational(1)), q(2, GaussianRational(1)), r(2, GaussianRational(1));
    std::vector<std::pair<MultiPoly, Verdict>> parts;
    int nt = static_cast<int>(rng() % 3), na = static_cast<int>(rng() % 3);
    if (nt + na == 0) nt = 1;
    for (int k = 0; k < nt; ++k) {
      MultiPoly f = P(toral[rng() % 5]);
      parts.push_back({monic(f), Verdict::Toral});
      q = q * f;
    }
    for (int k = 0; k < na; ++k) {
      MultiPoly f = P(atoral[rng() % 5]);
      parts.push_back({monic(f), Verdict::Atoral});
      r = r * f;
    }
    p = q * r;
    CAPTURE(p.to_string());
    SetClassification c = classify(p);
    for (const auto& fc : c.factors) {
      Verdict expect = Verdict::Atoral;
      bool found = false;
      for (const auto& [g, v] : parts)
        if (g == fc.factor) {
          expect = v;
          found = true;
        }
      CHECK(found);
      CHECK(fc.certificate.verdict == expect);
      if (fc.certificate.verdict == Verdict::Toral) CHECK(essential_symmetry(fc.factor).symmetric);
    }
    Split s = toral_atoral_split(p);
    CHECK(s.unit * s.toral * s.atoral == p);
    CHECK(s.toral == monic(q));
    CHECK(s.atoral == monic(r));
    if (!s.toral.is_constant()) CHECK(classify(s.toral).set_verdict == SetVerdict::Toral);
    if (!s.atoral.is_constant()) CHECK(classify(s.atoral).set_verdict == SetVerdict::Atoral);
  }
}

TEST_CASE("certificate evidence is sound") {
  const char* polys[] = {"z1 - z2",         "z1*z2 - 1",   "2 - z1 - z2", "z1^2 - z2",    "z1*z2^2 - z1^2*z2 - z2 + z1",
                         "z1 + z2 - 2*z1*z2", "3 - z1 - z2 - z1*z2", "z1^2*z2 + 1"};
  for (const char* s : polys) {
    CAPTURE(s);
    for (const auto& [g, m] : factor_irreducible(P(s)).factors) {
      auto c = classify_irreducible(g);
      if (auto* rp = std::get_if<evidence::RegularTorusPoint>(&c.evidence)) {
        CHECK(lies_on(g, rp->point));
        CHECK(on_torus_by_modulus(rp->point));
      }
      if (auto* ns = std::get_if<evidence::NotSymmetric>(&c.evidence))
        for (const auto& t : ns->trace) {
          CHECK(lies_on(g, t));
          CHECK(on_torus_by_modulus(t));
        }
      if (c.verdict == Verdict::Toral) CHECK(essential_symmetry(g).symmetric);
    }
    auto d = disjoint_from_bidisks(P(s));
    if (d.status == Tri::True) CHECK(classify(P(s)).set_verdict == SetVerdict::Toral);
  }
}

TEST_CASE("isolated points in a set") {
  auto c = classify(P("z1 - z2"), {{GaussianRational(1), GaussianRational::i()}});
  CHECK(c.set_verdict == SetVerdict::Toral);
  c = classify(P("z1 - z2"), {{GaussianRational(Rational(1, 2)), GaussianRational(1)}});
  CHECK(c.set_verdict == SetVerdict::Mixed);
  c = classify(P("z1 - z2"), {{GaussianRational(Rational(3, 5), Rational(4, 5)), GaussianRational(-1)}});
  CHECK(c.set_verdict == SetVerdict::Toral);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(classify(P("3")), DomainError);
  CHECK_THROWS_AS(classify_irreducible(P("z1 - z3")), DomainError);
}
