#include "doctest.h"
#include "toral/certificate.hpp"
#include "toral/parse.hpp"

using namespace toral;

namespace {
MultiPoly P(const char* s) { return parse(s); }
GaussianRational Q(long n, long d) { return GaussianRational(Rational(n, d)); }

json roundtrip(const json& j) { return json::parse(j.dump()); }
}  // namespace

TEST_CASE("scalars, balls and problems survive a round trip") {
  ComplexBall b{{0.1, -1.0 / 3}, 1e-17};
  ComplexBall c = ball_from_json(roundtrip(to_json(b)));
  CHECK(c.center == b.center);
  CHECK(c.radius == b.radius);

  PickProblem pr{{{Q(0, 1), Q(1, 3)}, {GaussianRational(Rational(1, 2), Rational(-2, 7)), Q(0, 1)}},
                 {GaussianRational(Rational(1, 5), Rational(1, 9)), Q(-3, 4)}};
  PickProblem back = pick_problem_from_json(roundtrip(to_json(pr)));
  CHECK(back.nodes == pr.nodes);
  CHECK(back.values == pr.values);

  json bad = to_json(pr);
  bad["nodes"][0][0] = "1";
  CHECK_THROWS(pick_problem_from_json(bad));
}

TEST_CASE("every evidence kind replays") {
  for (std::string s : {"2 - z1 - z2", "z1 - z2", "z1*z2 - 1", "z1 + i*z2", "z1 - 1", "z1^2 + z1 + 1", "z1 - 2",
                        "z1^2*z2 + z1*z2^2 + z1 + z2 - 4*z1*z2", "3 + z1*z2", "z1^2 - z2"}) {
    CAPTURE(s);
    ToralityCertificate cert = classify_irreducible(parse(s));
    json j = roundtrip(to_json(cert));
    CHECK(j["evidence_kind"] == evidence_kind(cert.evidence));
    VerifyResult v = verify_certificate(j);
    CAPTURE(v.reason);
    CHECK(v.ok);
  }
  DisjointnessResult d = disjoint_from_bidisks(P("(z1 - 1)*(z2 + 1)"));
  REQUIRE(d.certificate);
  VerifyResult v = verify_certificate(roundtrip(to_json(*d.certificate)));
  CAPTURE(v.reason);
  CHECK(v.ok);
}

TEST_CASE("tampered torality certificates are rejected") {
  json j = to_json(classify_irreducible(P("z1 - z2")));
  json t = j;
  t["verdict"] = "Atoral";
  CHECK(!verify_certificate(t).ok);
  t = j;
  t["p"] = "z1 - 2*z2";
  CHECK(!verify_certificate(t).ok);
  t = j;
  t["tau"] = "i";
  CHECK(!verify_certificate(t).ok);

  json a = to_json(classify_irreducible(P("2 - z1 - z2")));
  REQUIRE(a["evidence_kind"] == "NotSymmetric");
  t = a;
  t["data"]["trace"] = json::array();
  CHECK(!verify_certificate(t).ok);  // (1, 1) is a torus zero
  t = a;
  t["data"]["mismatch"] = json::array({json::array({1, 0})});
  CHECK(!verify_certificate(t).ok);

  t = a;
  t["p"] = "(z1 - z2)*(2 - z1)";
  CHECK(!verify_certificate(t).ok);
  CHECK(!verify_certificate(json{{"kind", "Nonsense"}}).ok);
  CHECK(!verify_certificate(json{{"kind", "ToralityCertificate"}}).ok);
}

TEST_CASE("Agler certificates replay and tampering is caught") {
  PickProblem pr{{{Q(0, 1), Q(0, 1)}, {Q(1, 2), Q(0, 1)}}, {Q(0, 1), Q(1, 2)}};
  SolveResult r = solvable(pr);
  REQUIRE(r.certificate);
  json j = roundtrip(to_json(*r.certificate, pr));
  VerifyResult v = verify_certificate(j);
  CAPTURE(v.reason);
  CHECK(v.ok);

  json t = j;
  t["Gamma"][0][0][0] = 2.0;
  CHECK(!verify_certificate(t).ok);
  t = j;
  t["problem"]["values"][1] = {"9/10", "0"};
  CHECK(!verify_certificate(t).ok);
  t = j;
  t["Delta"] = json::array({json::array({json::array({-1.0, 0.0})})});
  CHECK(!verify_certificate(t).ok);
}
