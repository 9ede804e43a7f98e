#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "toral/multipoly.hpp"
#include "toral/torality.hpp"

namespace toral {

/// phi(z) = tau * z^h * reflect(p)(z) / p(z).
struct RationalInner {
  Exponent h;
  MultiPoly p;
  /// z^h * reflect(p), without tau.
  MultiPoly numerator;
  bool canonical = false;
  GaussianRational tau{1};
};

/// Builds z^h reflect(p) / p after checking that p has no zeros in the open bidisk.
/// For nvars != 2 the caller must attest stability. Throws DomainError when p vanishes
/// in the bidisk and PrecisionError when the check is inconclusive.
RationalInner make_inner(const MultiPoly& p, const Exponent& h, bool stability_attested = false);

/// Multiplies p by an essentially symmetric r, keeping tau. The result differs from phi
/// by the constant conj(tau_r) where reflect(r) = tau_r r. No stability check: r may
/// vanish in the bidisk (the quotient cancels).
RationalInner pad(const RationalInner& phi, const MultiPoly& r);

/// Strips the unit and every essentially symmetric factor of p into tau.
RationalInner canonicalize(const RationalInner& phi);

/// c with phi = c * psi, if it exists.
std::optional<GaussianRational> essentially_equal(const RationalInner& phi, const RationalInner& psi);

/// Torus points where phi has no continuous extension: Z_p cap Z_{reflect p} on T^2.
std::vector<TorusPoint> singular_set(const RationalInner& phi);

enum class Location { InDisk, OnCircle, InExterior };
std::string to_string(Location l);

struct LevelSetReport {
  GaussianRational alpha;
  Location location = Location::InDisk;
  Verdict verdict = Verdict::Atoral;
  bool disjoint_from_disk = false;
  bool disjoint_from_exterior = false;
  /// tau z^h reflect(p) - alpha p, the polynomial whose zero set is Z_{phi - alpha}.
  MultiPoly level_polynomial;
  /// Set when the level polynomial was classified independently.
  std::optional<SetVerdict> cross_check;
};

/// Level set Z_{phi - alpha} per the location of alpha, cross-checked by classify.
LevelSetReport level_set_classify(const RationalInner& phi, const GaussianRational& alpha);

struct InnerSampleReport {
  double max_deviation = 0.0;
  /// Bound on | |phi| - 1 | implied by the evaluation radii at the worst sample.
  double max_radius_bound = 0.0;
  int samples_used = 0;
};

/// Samples | |phi| - 1 | on the torus away from the singular set.
InnerSampleReport verify_inner(const RationalInner& phi, int samples, std::uint64_t seed, double exclusion = 1e-3);

}  // namespace toral
