#include <random>

#include "doctest.h"
#include "toral/errors.hpp"
#include "toral/inner.hpp"
#include "toral/parse.hpp"

using namespace toral;

namespace {
MultiPoly P(const char* s) { return parse(s); }

// tau_r from an exact evaluation at a point where r does not vanish
GaussianRational symmetry_constant(const MultiPoly& r) {
  std::vector<GaussianRational> pt{GaussianRational(Rational(2, 7), Rational(1, 3)), GaussianRational(Rational(-5, 11))};
  return evaluate(reflect(r), pt) / evaluate(r, pt);
}

RationalInner example() { return make_inner(P("2 - z1 - z2"), {0, 0}); }
}  // namespace

TEST_CASE("make_inner") {
  RationalInner phi = example();
  CHECK(phi.numerator == P("2*z1*z2 - z1 - z2"));
  CHECK(phi.tau == GaussianRational(1));

  phi = make_inner(P("1"), {1, 1});
  CHECK(phi.numerator == P("z1*z2"));

  CHECK_THROWS_AS(make_inner(P("1 - 2*z1"), {0, 0}), DomainError);
  CHECK_THROWS_AS(make_inner(P("2 - z1"), {-1, 0}), DomainError);
}

TEST_CASE("canonicalize") {
  RationalInner c = canonicalize(make_inner(P("(z1 - z2)*(2 - z1 - z2)"), {0, 0}, true));
  CHECK(c.p == P("z1 + z2 - 2"));
  CHECK(c.tau == GaussianRational(-1));
  CHECK(c.canonical);

  RationalInner e = canonicalize(example());
  CHECK(e.p == P("z1 + z2 - 2"));
  CHECK(e.tau == GaussianRational(1));
  RationalInner e2 = canonicalize(e);
  CHECK(e2.p == e.p);
  CHECK(e2.tau == e.tau);
  CHECK(e2.h == e.h);

  c = canonicalize(make_inner(P("z1*z2 - 1"), {0, 0}, true));
  CHECK(c.p == P("1"));
  CHECK(c.tau == GaussianRational(-1));
}

TEST_CASE("essential equality") {
  auto t = essentially_equal(make_inner(P("(z1 - z2)*(2 - z1 - z2)"), {0, 0}, true), example());
  REQUIRE(t);
  CHECK(*t == GaussianRational(-1));
  t = essentially_equal(make_inner(P("1"), {1, 1}), make_inner(P("1"), {1, 1}));
  REQUIRE(t);
  CHECK(*t == GaussianRational(1));
  CHECK(!essentially_equal(make_inner(P("1"), {1, 0}), make_inner(P("1"), {0, 1})));
  CHECK(!essentially_equal(example(), make_inner(P("3 - z1 - z2"), {0, 0})));
}

TEST_CASE("padding by toral factors is undone by canonicalization") {
  RationalInner phi = example();
  RationalInner padded = pad(pad(phi, P("z1 - z2")), P("z1*z2 - 1"));
  auto t = essentially_equal(padded, phi);
  REQUIRE(t);
  CHECK(*t == symmetry_constant(P("z1 - z2")) * symmetry_constant(P("z1*z2 - 1")));
  CHECK(canonicalize(padded).p == canonicalize(phi).p);

  const char* lib[] = {"z1 - z2", "z1*z2 - 1", "z1 - 1", "z1 + i*z2", "z2 + 1", "z1^2 - z2"};
  std::mt19937_64 rng(9);
  for (int it = 0; it < 20; ++it) {
    RationalInner x = phi;
    GaussianRational expect(1);
    int k = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < k; ++j) {
      MultiPoly r = P(lib[rng() % 6]);
      x = pad(x, r);
      expect = expect * symmetry_constant(r);
    }
    auto c = essentially_equal(x, phi);
    REQUIRE(c);
    CHECK(*c == expect);
    CHECK(c->is_unimodular());
  }
  CHECK_THROWS_AS(pad(phi, P("2 - z1")), DomainError);
}

TEST_CASE("singular sets") {
  auto s = singular_set(example());
  REQUIRE(s.size() == 1);
  CHECK(s[0].z1.contains({1, 0}));
  CHECK(s[0].z2.contains({1, 0}));
  CHECK(s[0].z1.radius <= 1e-8);
  CHECK(s[0].z2.radius <= 1e-8);
  MultiPoly p = P("2 - z1 - z2");
  CHECK(std::abs(evaluate_certified(p, {s[0].z1, s[0].z2}).center) <= 1e-10);
  CHECK(std::abs(evaluate_certified(reflect(p), {s[0].z1, s[0].z2}).center) <= 1e-10);

  CHECK(singular_set(make_inner(P("1"), {1, 1})).empty());
  CHECK(singular_set(make_inner(P("2 - z1"), {0, 0})).empty());
}

TEST_CASE("structural innerness at exact torus points") {
  std::vector<GaussianRational> circle{GaussianRational(1), GaussianRational::i(),
                                       GaussianRational(Rational(3, 5), Rational(4, 5)),
                                       GaussianRational(Rational(-5, 13), Rational(12, 13)),
                                       GaussianRational(Rational(8, 17), Rational(-15, 17))};
  for (const char* s : {"2 - z1 - z2", "3 - z1*z2 - z1", "2 - z1", "4 + i*z1 - z2^2"}) {
    RationalInner phi = make_inner(P(s), {1, 2});
    for (const auto& a : circle)
      for (const auto& b : circle)
        CHECK(evaluate(phi.numerator, {a, b}).norm2() == evaluate(phi.p, {a, b}).norm2());
  }
}

TEST_CASE("level sets") {
  RationalInner phi = make_inner(P("1"), {1, 1});
  auto r = level_set_classify(phi, GaussianRational(0));
  CHECK(r.location == Location::InDisk);
  CHECK(r.verdict == Verdict::Atoral);
  CHECK(r.disjoint_from_exterior);
  r = level_set_classify(phi, GaussianRational(1));
  CHECK(r.verdict == Verdict::Toral);
  CHECK(r.cross_check == SetVerdict::Toral);
  CHECK(r.level_polynomial == P("z1*z2 - 1"));
  r = level_set_classify(phi, GaussianRational(2));
  CHECK(r.location == Location::InExterior);
  CHECK(r.verdict == Verdict::Atoral);
  CHECK(r.disjoint_from_disk);

  RationalInner e = example();
  for (auto a : {GaussianRational(Rational(1, 2)), GaussianRational(Rational(3, 5), Rational(4, 5)), GaussianRational::i(),
                 GaussianRational(3, 0)}) {
    CAPTURE(a.to_string());
    CHECK_NOTHROW(level_set_classify(e, a));
  }
}

TEST_CASE("sampled innerness") {
  auto r = verify_inner(make_inner(P("1"), {1, 1}), 100, 1);
  CHECK(r.samples_used == 100);
  CHECK(r.max_deviation <= 1e-14);
  r = verify_inner(example(), 100, 2);
  CHECK(r.samples_used > 90);
  CHECK(r.max_deviation <= 1e-12);
  CHECK(r.max_deviation <= r.max_radius_bound);
  r = verify_inner(make_inner(P("2 - z1"), {0, 0}), 100, 3);
  CHECK(r.max_deviation <= 1e-12);
}
