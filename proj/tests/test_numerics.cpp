#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "toral/algebra.hpp"
#include "toral/errors.hpp"
#include "toral/numerics.hpp"
#include "toral/parse.hpp"

using namespace toral;
using std::numbers::pi;

namespace {
MultiPoly P(const char* s) { return parse(s); }
UPoly U(const char* s) { return to_univariate(parse(s), 0); }

bool has_root_near(const std::vector<CertifiedRoot>& rs, std::complex<double> z, double tol) {
  for (const auto& r : rs)
    if (std::abs(r.value.center - z) <= tol && r.value.contains(z)) return true;
  return false;
}
}  // namespace

TEST_CASE("certified evaluation is exact on exact points") {
  MultiPoly p = P("2 - z1 - z2");
  auto v = evaluate_certified(p, {ComplexBall::exact(1), ComplexBall::exact(1)});
  CHECK(v.center == std::complex<double>(0, 0));
  CHECK(v.radius == 0.0);
  v = evaluate_certified(p, {ComplexBall::exact(GaussianRational::i()), ComplexBall::exact(-GaussianRational::i())});
  CHECK(v.center == std::complex<double>(2, 0));
  CHECK(v.radius == 0.0);
  v = evaluate_certified(p, {ComplexBall::exact(Rational(1, 2)), ComplexBall::exact(Rational(1, 2))});
  CHECK(v.center == std::complex<double>(1, 0));
  CHECK(v.radius == 0.0);
  // 1/3 is not a double: the ball must still contain the exact value 2 - 2/3 = 4/3
  v = evaluate_certified(p, {ComplexBall::exact(Rational(1, 3)), ComplexBall::exact(Rational(1, 3))});
  CHECK(v.radius > 0.0);
  CHECK(v.radius < 1e-15);
  Rational err = abs(Rational(v.center.real()) - Rational(4, 3));
  CHECK(v.center.imag() == 0.0);
  CHECK(err <= Rational(v.radius));
}

TEST_CASE("roots_certified examples") {
  auto r = roots_certified(U("z^2 - 1"));
  REQUIRE(r.size() == 2);
  CHECK(has_root_near(r, 1.0, 1e-14));
  CHECK(has_root_near(r, -1.0, 1e-14));
  for (auto& x : r) CHECK(x.value.radius <= 1e-14);
  r = roots_certified(U("2*z^2 - 5*z + 2"));
  REQUIRE(r.size() == 2);
  CHECK(has_root_near(r, 2.0, 1e-14));
  CHECK(has_root_near(r, 0.5, 1e-14));
  r = roots_certified(U("z^2 + 1"));
  REQUIRE(r.size() == 2);
  CHECK(has_root_near(r, {0, 1}, 1e-14));
  CHECK(has_root_near(r, {0, -1}, 1e-14));
  // quad precision shrinks enclosures
  auto rq = roots_certified(U("z^3 - 2"), 113);
  REQUIRE(rq.size() == 3);
  for (auto& x : rq) CHECK(x.value.radius <= 1e-15);
}

TEST_CASE("multiple roots form one cluster") {
  auto r = roots_certified(U("(z - 1)^3*(z + 2)"));
  int total = 0;
  for (auto& x : r) total += x.multiplicity_hint;
  CHECK(total == 4);
  bool cluster = false;
  for (auto& x : r)
    if (x.multiplicity_hint == 3) cluster = x.value.contains(1.0);
  CHECK(cluster);
}

TEST_CASE("root enclosure soundness on constructed polynomials") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-8, 8);
  for (int t = 0; t < 60; ++t) {
    int n = 1 + static_cast<int>(rng() % 8);
    std::vector<GaussianRational> roots;
    UPoly f(GaussianRational(1));
    for (int k = 0; k < n; ++k) {
      GaussianRational a(Rational(d(rng), 4), Rational(d(rng), 4));
      roots.push_back(a);
      f = f * UPoly(std::vector<GaussianRational>{-a, GaussianRational(1)});
    }
    auto rs = roots_certified(f);
    int total = 0;
    for (auto& x : rs) total += x.multiplicity_hint;
    CHECK(total == n);
    for (const auto& a : roots) {
      std::complex<double> z(a.re().get_d(), a.im().get_d());
      int hits = 0;
      for (auto& x : rs) hits += x.value.contains(z) ? 1 : 0;
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("unimodular roots") {
  // roots 2 and 1/2: gcd(q, reflect q) = q but no root is on the circle
  CHECK(unimodular_roots(U("2*z^2 - 5*z + 2")).empty());
  auto u = unimodular_roots(U("z^2 + z + 1"));
  CHECK(u.size() == 2);
  u = unimodular_roots(U("(z - 1)^2*(z - 3)*z"));
  REQUIRE(u.size() == 1);
  CHECK(u[0].contains(1.0));
  CHECK(u[0].radius <= 1e-14);
  // Pythagorean point (3+4i)/5
  u = unimodular_roots(U("z - 3/5 - 4/5*i"));
  REQUIRE(u.size() == 1);
  CHECK(std::abs(u[0].center - std::complex<double>(0.6, 0.8)) < 1e-15);
  CHECK(unimodular_roots(U("z - 1/2")).empty());
}

TEST_CASE("locate roots") {
  auto l = locate_roots(U("(z - 2)*(z - 1/3)*(z + 1)*z"));
  int in = 0, on = 0, out = 0;
  for (auto& r : l) {
    in += r.status == CircleStatus::Inside;
    on += r.status == CircleStatus::On;
    out += r.status == CircleStatus::Outside;
  }
  CHECK(in == 2);
  CHECK(on == 1);
  CHECK(out == 1);
}

TEST_CASE("fiber examples") {
  auto f = fiber_unimodular_roots(P("z1 - z2"), pi / 3);
  REQUIRE(f.roots.size() == 1);
  CHECK(f.unimodular_count == 1);
  CHECK(std::abs(f.roots[0].value.center - std::polar(1.0, pi / 3)) < 1e-14);
  f = fiber_unimodular_roots(P("2 - z1 - z2"), pi);
  REQUIRE(f.roots.size() == 1);
  CHECK(f.unimodular_count == 0);
  CHECK(f.roots[0].value.contains(3.0));
  CHECK(f.heuristic);
  for (double th : {0.1, 1.0, 2.5, 4.0}) {
    f = fiber_unimodular_roots(P("z1*z2 - 1"), th);
    REQUIRE(f.roots.size() == 1);
    CHECK(f.unimodular_count == 1);
    CHECK(std::abs(f.roots[0].value.center - std::polar(1.0, -th)) < 1e-14);
    CHECK(!f.heuristic);
  }
  CHECK_THROWS_AS(fiber_unimodular_roots(P("z1*z2^2 - (z1^2+1)*z2 + z1"), 0.0), DomainError);
}

TEST_CASE("breakpoints") {
  CHECK(torus_breakpoints(P("z1 - z2")).breakpoints.empty());
  CHECK(torus_breakpoints(P("2*z1*z2 - z1 - z2")).breakpoints.empty());
  auto a = torus_breakpoints(P("z1*z2^2 - (z1^2+1)*z2 + z1"));
  REQUIRE(a.breakpoints.size() == 2);
  CHECK(std::abs(a.breakpoints[0].theta) < 1e-12);
  CHECK(std::abs(a.breakpoints[1].theta - pi) < 1e-12);
  CHECK(a.arcs().size() == 2);
  CHECK(torus_breakpoints(P("z1 - z2")).arcs().size() == 1);
}

TEST_CASE("pairing soundness for symmetric polynomials") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> th(0, 2 * pi);
  for (const char* s : {"z1*z2^2 - (z1^2+1)*z2 + z1", "z1 - z2", "z1*z2 - 1", "z1^2 - z2", "z1^2*z2^2 + 3*z1*z2 + 1",
                        "z2^3 + 2*z1*z2^2 + 2*z1^2*z2 + z1^3"}) {
    MultiPoly p = P(s);
    REQUIRE(essential_symmetry(p).symmetric);
    for (int t = 0; t < 100; ++t) {
      double theta = th(rng);
      FiberReport f;
      try {
        f = fiber_report(p, theta);
      } catch (const PrecisionError&) {
        continue;  // sampled right on a breakpoint
      }
      // the multiset of roots is closed under w -> 1/conj(w)
      for (std::size_t j = 0; j < f.roots.size(); ++j) {
        REQUIRE(f.pairing[j] >= 0);
        auto w = f.roots[j].value.center;
        auto img = 1.0 / std::conj(w);
        auto& partner = f.roots[static_cast<std::size_t>(f.pairing[j])].value;
        CHECK(std::abs(img - partner.center) <= 1e-8);
      }
    }
  }
}

TEST_CASE("arc stability of unimodular counts") {
  for (const char* s : {"z1*z2^2 - (z1^2+1)*z2 + z1", "z1^2*z2^2 + 3*z1*z2 + 1", "z2^2 - 3*z1*z2 + z1^2"}) {
    MultiPoly p = P(s);
    auto arcs = torus_breakpoints(p);
    for (const auto& arc : arcs.samples(10)) {
      int first = -1;
      for (double t : arc) {
        auto f = fiber_report(p, t);
        CHECK(f.certified);
        if (first < 0) first = f.unimodular_count;
        CHECK(f.unimodular_count == first);
      }
    }
  }
}

TEST_CASE("nearest_psd") {
  Eigen::MatrixXcd m(2, 2);
  m << 1, 0, 0, -1;
  auto r = nearest_psd(m);
  CHECK(std::abs(r(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(r(1, 1)) < 1e-14);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(3, 3);
  CHECK((nearest_psd(id) - id).norm() < 1e-14);
  m << 0, 1, 1, 0;
  r = nearest_psd(m);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(r(i, j) - 0.5) < 1e-14);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXcd a(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = {g(rng), g(rng)};
    auto p1 = nearest_psd(a);
    CHECK((nearest_psd(p1) - p1).norm() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p1);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  }
  Eigen::MatrixXcd bad(1, 1);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(nearest_psd(bad), DomainError);
}

TEST_CASE("self-reciprocal factors with irrational unimodular roots") {
  for (const char* s : {"z^2 + z + 1", "z^4 + z^3 + z^2 + z + 1", "z^2 - z + 1", "5*z^2 - 6*z + 5"}) {
    CAPTURE(s);
    auto l = locate_roots(U(s));
    CHECK(!l.empty());
    for (const auto& r : l) {
      CHECK(r.status == CircleStatus::On);
      CHECK(std::abs(std::abs(r.value.center) - 1.0) <= r.value.radius + 1e-12);
    }
  }
}
