#pragma once

// JSON forms of the library's results and an independent replay of certificates.
// Balls serialize as {"center": [re, im], "radius": r}; exact scalars and polynomials
// as strings that re-parse to the same value.

#include <string>

#include <nlohmann/json.hpp>

#include "toral/inner.hpp"
#include "toral/pick.hpp"
#include "toral/torality.hpp"

namespace toral {

using json = nlohmann::ordered_json;

json to_json(const ComplexBall& b);
ComplexBall ball_from_json(const json& j);
json to_json(const TorusPoint& t);
TorusPoint torus_point_from_json(const json& j);

json to_json(const ToralityCertificate& c);
json to_json(const SetClassification& c);
json to_json(const DisjointnessResult& r);
json to_json(const TorusIntersection& t);
json to_json(const DistinguishedResult& r);
json to_json(const RationalInner& phi);
json to_json(const LevelSetReport& r);
json to_json(const UniquenessReport& r);

json to_json(const PickProblem& pr);
/// {nodes: [[re, im, re, im], ...], values: [[re, im], ...]} with rational strings.
PickProblem pick_problem_from_json(const json& j);
/// Agler pair for values scaled by sqrt(s); the problem is embedded so the result stands alone.
json to_json(const AglerCertificate& c, const PickProblem& pr, double s = 1.0);

struct VerifyResult {
  bool ok = false;
  std::string kind;
  std::string reason;
};

/// Replays a ToralityCertificate or AglerCertificate from its JSON form alone.
VerifyResult verify_certificate(const json& j);

}  // namespace toral
