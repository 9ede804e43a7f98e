#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "toral/inner.hpp"
#include "toral/multipoly.hpp"
#include "toral/torality.hpp"

namespace toral {

using Node = std::pair<GaussianRational, GaussianRational>;

struct PickProblem {
  std::vector<Node> nodes;
  std::vector<GaussianRational> values;

  /// Throws DomainError unless nodes are distinct points of the open bidisk and sizes match.
  void validate() const;
  std::size_t size() const { return nodes.size(); }
  /// Same nodes, values divided by rho.
  PickProblem scaled(const Rational& inv_rho) const;
};

/// A = G1 o Gamma + G2 o Delta with Gamma, Delta positive semidefinite.
struct AglerCertificate {
  Eigen::MatrixXcd Gamma, Delta;
  double residual = 0.0;
  double min_eig_gamma = 0.0, min_eig_delta = 0.0;
};

/// A_ij = 1 - w_i conj(w_j), scaled by s (values multiplied by sqrt(s)).
Eigen::MatrixXcd pick_matrix(const PickProblem& pr, double s = 1.0);
/// Gk_ij = 1 - lambda_i^k conj(lambda_j^k), k = 1, 2.
Eigen::MatrixXcd kernel_matrix(const PickProblem& pr, int k);

struct CertificateCheck {
  bool ok = false;
  double residual = 0.0;
  double min_eig_gamma = 0.0, min_eig_delta = 0.0;
  std::string reason;
};
/// Recomputes residual and eigenvalues from scratch. s scales the values as in pick_matrix.
CertificateCheck check_agler(const PickProblem& pr, const AglerCertificate& c, double residual_tol = 1e-7,
                             double eig_tol = 1e-9, double s = 1.0);

enum class Feasibility { Feasible, InfeasibleHeuristic, Inconclusive };
std::string to_string(Feasibility f);

/// InteriorPoint maximizes the smallest eigenvalue of (Gamma, Delta) on the constraint set
/// with a log-barrier method. Dykstra alternates projections onto the cone and the affine set.
enum class SolverMethod { InteriorPoint, Dykstra };

struct SolveOptions {
  SolverMethod method = SolverMethod::InteriorPoint;
  double tol = 1e-7;
  int max_iters = 20000;
  /// Iterations over which lack of progress is read as infeasibility.
  int stagnation_window = 500;
};

struct SolveResult {
  Feasibility status = Feasibility::Inconclusive;
  std::optional<AglerCertificate> certificate;
  /// Dykstra: distance between the cone iterate and the affine set at exit.
  /// Interior point: how far the returned pair is from semidefinite.
  double gap = 0.0;
  /// Interior point: achieved smallest eigenvalue and an upper bound for the best possible one
  /// (negative bound: no Agler pair exists, up to rounding).
  double margin = 0.0, margin_upper = 0.0;
  int iterations = 0;
  /// Gap at the end of each stagnation window.
  std::vector<double> gap_trace;
};

/// Searches for an Agler pair; infeasibility is only reported heuristically.
SolveResult solvable(const PickProblem& pr, const SolveOptions& opt = {});

struct NormResult {
  double rho_star = 0.0;
  /// rho_star lies in [lower, upper]; upper carries a certificate, lower is heuristic.
  double lower = 0.0, upper = 0.0;
  /// Agler pair for the values scaled by sqrt(certificate_scale) = 1 / upper
  /// (check with check_agler(pr, *certificate, ..., certificate_scale)).
  std::optional<AglerCertificate> certificate;
  double certificate_scale = 1.0;
  int probes = 0;
  /// Probes that ended Inconclusive and were treated as infeasible.
  int inconclusive_probes = 0;
};

/// Smallest rho for which values / rho are interpolable, by bisection to width tol.
NormResult minimal_norm(const PickProblem& pr, double tol = 1e-5, const SolveOptions& opt = {});

struct ExtremalReport {
  bool extremal = false;
  double margin = 0.0;  // rho* - 1
  NormResult norm;
  /// Set when requested: no (N-1)-point subproblem is extremal.
  std::optional<bool> minimal;
};
ExtremalReport is_extremal(const PickProblem& pr, double tol = 1e-4, bool check_minimality = false);

struct UniquenessReport {
  /// gcd of the reduced numerators of pairwise differences; zero when fewer than two distinct solutions.
  MultiPoly B;
  /// Toral part of B.
  MultiPoly V;
  MultiPoly atoral;
  std::vector<TorusPoint> atoral_torus_points;
  bool nodes_on_V = false;
  bool whole_bidisk = false;
  std::string note;
};
UniquenessReport uniqueness_candidate(const std::vector<RationalInner>& solutions, const std::vector<Node>& nodes = {});

/// (prod r_i) * prod (2 - conj(t1) z1 - conj(t2) z2) over torus points t.
MultiPoly perturbation_g(const std::vector<MultiPoly>& toral_factors, const std::vector<Node>& torus_points);

}  // namespace toral
