#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "toral/multipoly.hpp"
#include "toral/upoly.hpp"

namespace toral {

/// Disk in C containing an exact value.
struct ComplexBall {
  std::complex<double> center{0.0, 0.0};
  double radius = 0.0;

  /// Enclosure of an exact scalar; radius 0 when it is a double pair.
  static ComplexBall exact(const GaussianRational& g);
  bool contains(std::complex<double> z) const;
  bool contains_zero() const { return contains({0.0, 0.0}); }
  /// Upper bound for |x| over the ball.
  double abs_upper() const;
  double abs_lower() const;
};

/// Ball containing p(point) for every choice of exact values inside the input balls.
ComplexBall evaluate_certified(const MultiPoly& p, const std::vector<ComplexBall>& point);

struct CertifiedRoot {
  ComplexBall value;
  int multiplicity_hint = 1;
};

/// Enclosures for the roots of sum coeffs[k] x^k. precision_bits is 53 or 113.
std::vector<CertifiedRoot> roots_certified(const std::vector<ComplexBall>& coeffs, int precision_bits = 53);
std::vector<CertifiedRoot> roots_certified(const UPoly& f, int precision_bits = 53);

/// Where a root sits relative to the unit circle.
/// OffCircle: certainly not unimodular, side not settled.
enum class CircleStatus { Inside, On, Outside, OffCircle, Unresolved };

/// Certified enclosures of the distinct unimodular roots of q (exact coefficients).
/// Throws PrecisionError when 113 bits do not settle a root.
std::vector<ComplexBall> unimodular_roots(const UPoly& q);

/// Each distinct root of a squarefree q with its certified position.
struct LocatedRoot {
  ComplexBall value;
  CircleStatus status = CircleStatus::Unresolved;
};
std::vector<LocatedRoot> locate_roots(const UPoly& q);

struct FiberReport {
  double theta = 0.0;
  /// Index of the variable the roots live in (0-based); the other is e^{i theta}.
  std::size_t var = 1;
  std::vector<CertifiedRoot> roots;
  std::vector<CircleStatus> status;
  /// pairing[j] = index of the root containing 1/conj(root j), or -1 if unresolved.
  std::vector<int> pairing;
  int unimodular_count = 0;
  int inside_count = 0;
  int outside_count = 0;
  /// Every root located with respect to the circle.
  bool certified = false;
  /// Pairing is only a rigorous unimodularity test for essentially symmetric p.
  bool heuristic = false;
  int precision_bits = 53;
};

struct NumericOptions {
  double breakpoint_exclusion = 1e-6;
  double residual_tol = 1e-12;
  double pairing_margin = 1e-9;
  int min_bits = 53;
  int max_bits = 113;
};

/// Roots of p(e^{i theta}, .) (or p(., e^{i theta}) for var = 0) with reflection pairing.
/// Escalates precision as needed; does not check breakpoints.
FiberReport fiber_report(const MultiPoly& p, double theta, std::size_t var = 1, const NumericOptions& opt = {});

/// Checked variant: rejects theta within tol of a breakpoint of p.
FiberReport fiber_unimodular_roots(const MultiPoly& p, double theta, double tol = 1e-6);

enum class BreakpointSource { Discriminant, LeadingCoefficient, TorusTrace };

struct Breakpoint {
  double theta = 0.0;
  /// Exclusion half-width around theta.
  double halfwidth = 0.0;
  BreakpointSource source = BreakpointSource::Discriminant;
  ComplexBall point;
};

struct ArcDecomposition {
  std::size_t var = 1;
  /// Sorted by theta in [0, 2 pi).
  std::vector<Breakpoint> breakpoints;
  /// Open arcs between consecutive exclusion zones as (start, end), end may exceed 2 pi.
  std::vector<std::pair<double, double>> arcs() const;
  /// k interior sample angles per arc, grouped by arc.
  std::vector<std::vector<double>> samples(int k) const;
  bool near_breakpoint(double theta, double tol) const;
};

/// Unimodular zeros (in the other variable) of the discriminant and leading coefficient of p
/// viewed as a polynomial in z_var; with include_trace also of Res_var(p, reflect(p)).
ArcDecomposition torus_breakpoints(const MultiPoly& p, std::size_t var = 1, bool include_trace = false,
                                   double exclusion = 1e-6);

/// Frobenius-nearest positive semidefinite matrix of the hermitian part of m.
Eigen::MatrixXcd nearest_psd(const Eigen::MatrixXcd& m);

/// e^{i theta} enclosure.
ComplexBall unit_point(double theta);

}  // namespace toral
