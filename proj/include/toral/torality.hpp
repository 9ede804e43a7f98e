#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "toral/algebra.hpp"
#include "toral/multipoly.hpp"
#include "toral/numerics.hpp"

namespace toral {

enum class Verdict { Toral, Atoral };
enum class SetVerdict { Toral, Atoral, Mixed };

std::string to_string(Verdict v);
std::string to_string(SetVerdict v);

struct TorusPoint {
  ComplexBall z1, z2;
};

namespace evidence {

/// reflect(p) is not a unimodular multiple of p. trace is a certified superset of
/// Z_p on the torus (common unimodular zeros of p and reflect(p)).
struct NotSymmetric {
  std::vector<Exponent> mismatch;
  std::vector<TorusPoint> trace;
};

/// A simple unimodular root of the fiber p(e^{i theta}, .), with dp/dz2 bounded away from 0.
struct RegularTorusPoint {
  double theta = 0.0;
  TorusPoint point;
  ComplexBall derivative;
};

/// Certified superset of Z_p on the torus.
struct FiniteTrace {
  std::vector<TorusPoint> candidates;
  /// Bezout bound on the number of isolated common zeros used.
  int bound = 0;
};

/// One fiber sample of a census: counts of roots inside, on and outside the circle.
struct FiberCount {
  double theta = 0.0;
  int inside = 0, on = 0, outside = 0;
};

/// Fiber counts proving that one irreducible factor has no zeros in the open bidisk
/// (or, for the exterior, that its reflection has none off the axes).
struct FactorDisjointness {
  MultiPoly factor;
  /// "disk" or "exterior".
  std::string region;
  /// For univariate factors: the roots and their positions.
  std::vector<LocatedRoot> roots;
  /// For bivariate factors: fibers over z1 on the circle (roots in z2) ...
  std::vector<FiberCount> circle_fibers;
  /// ... and the base fiber z2 = base (roots in z1) with no roots inside.
  GaussianRational base;
  int base_inside = 0;
};

struct BidiskDisjoint {
  std::vector<FactorDisjointness> parts;
};

/// Univariate factor in z_{var+1} whose roots are all unimodular.
struct UnivariateUnimodular {
  std::size_t var = 0;
  std::vector<ComplexBall> roots;
};

}  // namespace evidence

using Evidence = std::variant<evidence::NotSymmetric, evidence::RegularTorusPoint, evidence::FiniteTrace,
                              evidence::BidiskDisjoint, evidence::UnivariateUnimodular>;

std::string evidence_kind(const Evidence& e);

struct ToralityCertificate {
  MultiPoly p;
  Verdict verdict = Verdict::Atoral;
  Evidence evidence;
  /// Present when p is essentially symmetric.
  std::optional<GaussianRational> tau;
};

struct FactorClass {
  MultiPoly factor;
  int multiplicity = 1;
  ToralityCertificate certificate;
};

struct PointClass {
  GaussianRational z1, z2;
  bool on_torus = false;
};

struct SetClassification {
  GaussianRational unit;
  std::vector<FactorClass> factors;
  std::vector<PointClass> points;
  SetVerdict set_verdict = SetVerdict::Atoral;
};

/// Decides torality of an irreducible bivariate polynomial.
ToralityCertificate classify_irreducible(const MultiPoly& p);

/// Classifies the zero set of p, optionally together with isolated points.
SetClassification classify(const MultiPoly& p,
                           const std::vector<std::pair<GaussianRational, GaussianRational>>& points = {});

struct Split {
  MultiPoly toral, atoral;
  GaussianRational unit;
};
/// p = unit * toral * atoral.
Split toral_atoral_split(const MultiPoly& p);

enum class Tri { True, False, Unknown };
std::string to_string(Tri t);

struct DisjointnessResult {
  Tri status = Tri::Unknown;
  /// For False: a zero of p in the open bidisk or in the exterior bidisk.
  std::optional<TorusPoint> witness;
  std::string region;  // "disk" or "exterior" for the witness
  std::optional<ToralityCertificate> certificate;  // for True
  evidence::BidiskDisjoint proof;
  std::string reason;
};

/// Whether Z_p misses both the open bidisk and the exterior bidisk.
DisjointnessResult disjoint_from_bidisks(const MultiPoly& p, double tol = 1e-6);
/// Only the open bidisk (used for stable denominators).
DisjointnessResult disjoint_from_disk(const MultiPoly& p, double tol = 1e-6);

/// Certified superset of the common zeros of f and g on the torus (f, g coprime).
std::vector<TorusPoint> common_torus_zeros(const MultiPoly& f, const MultiPoly& g);

struct TorusIntersection {
  bool one_dimensional = false;
  /// Isolated candidates from atoral factors.
  std::vector<TorusPoint> finite_points;
  /// On-curve samples from toral factors.
  std::vector<TorusPoint> samples;
};
TorusIntersection torus_intersection(const MultiPoly& p, int samples_per_arc = 8);

struct FiberCensus {
  std::size_t var = 1;
  ArcDecomposition arcs;
  std::vector<evidence::FiberCount> fibers;
  bool complete = true;
  std::optional<double> inside_theta;  // an angle whose fiber has roots inside
  std::optional<TorusPoint> inside_point;
  /// Certified points of the curve with both coordinates on the circle.
  std::vector<TorusPoint> on_points;
};
/// Counts the roots of f inside the unit disk on fibers where the other variable runs over the circle.
FiberCensus fiber_census(const MultiPoly& f, std::size_t var, int per_arc = 3);

struct DistinguishedResult {
  Tri status = Tri::Unknown;
  std::string reason;
  std::optional<TorusPoint> interior_witness;
  /// For False with nonempty W: a zero with one coordinate on the circle and the other inside.
  std::optional<TorusPoint> counterexample;
  std::vector<TorusPoint> boundary_samples;
};
DistinguishedResult distinguished_variety_check(const MultiPoly& p, double tol = 1e-6);

}  // namespace toral
