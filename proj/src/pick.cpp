#include "toral/pick.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "toral/algebra.hpp"
#include "toral/errors.hpp"

namespace toral {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using cd = std::complex<double>;

namespace {

cd to_cd(const GaussianRational& g) { return {g.re().get_d(), g.im().get_d()}; }

double min_eig(const MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

struct Data {
  MatrixXcd A, G1, G2;
  Eigen::MatrixXd W;  // |g1|^2 + |g2|^2
};

struct Pair {
  MatrixXcd G, D;
  Pair operator+(const Pair& o) const { return {G + o.G, D + o.D}; }
  Pair operator-(const Pair& o) const { return {G - o.G, D - o.D}; }
  double norm() const { return std::sqrt(G.squaredNorm() + D.squaredNorm()); }
};

MatrixXcd residual(const Data& d, const MatrixXcd& G, const MatrixXcd& D) {
  return d.A - d.G1.cwiseProduct(G) - d.G2.cwiseProduct(D);
}

Pair project_affine(const Data& d, const Pair& x) {
  MatrixXcd r = residual(d, x.G, x.D).cwiseQuotient(d.W.cast<cd>());
  return {x.G + d.G1.conjugate().cwiseProduct(r), x.D + d.G2.conjugate().cwiseProduct(r)};
}

MatrixXcd project_psd(const MatrixXcd& m, double floor) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (m + m.adjoint()));
  VectorXd ev = es.eigenvalues().cwiseMax(floor);
  return es.eigenvectors() * ev.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

AglerCertificate make_cert(const Data& d, const MatrixXcd& G, const MatrixXcd& D) {
  AglerCertificate c;
  c.Gamma = 0.5 * (G + G.adjoint());
  c.Delta = 0.5 * (D + D.adjoint());
  c.residual = residual(d, c.Gamma, c.Delta).norm();
  c.min_eig_gamma = min_eig(c.Gamma);
  c.min_eig_delta = min_eig(c.Delta);
  return c;
}

bool valid(const AglerCertificate& c, double tol) {
  return c.residual <= tol && c.min_eig_gamma >= -1e-9 && c.min_eig_delta >= -1e-9;
}

// Basis of n x n hermitian matrices U E U* restricted to the span of U's columns.
std::vector<MatrixXcd> face_basis(const MatrixXcd& U) {
  std::vector<MatrixXcd> out;
  Eigen::Index k = U.cols();
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = a; b < k; ++b) {
      MatrixXcd e = MatrixXcd::Zero(k, k);
      if (a == b) {
        e(a, a) = 1;
        out.push_back(U * e * U.adjoint());
      } else {
        e(a, b) = 1;
        e(b, a) = 1;
        out.push_back(U * e * U.adjoint());
        e(a, b) = cd(0, 1);
        e(b, a) = cd(0, -1);
        out.push_back(U * e * U.adjoint());
      }
    }
  return out;
}

MatrixXcd range_of(const MatrixXcd& m, double thresh) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (m + m.adjoint()));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > thresh) keep.push_back(i);
  MatrixXcd U(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) U.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]);
  return U;
}

// Moves (G, D) within the faces spanned by their dominant eigenvectors to satisfy the constraint.
std::optional<AglerCertificate> polish(const Data& d, const MatrixXcd& G, const MatrixXcd& D, double tol) {
  double scale = std::max({1.0, G.norm(), D.norm()});
  for (double t : {1e-3, 1e-5, 1e-7, 1e-9}) {
    MatrixXcd U1 = range_of(G, t * scale), U2 = range_of(D, t * scale);
    auto b1 = face_basis(U1), b2 = face_basis(U2);
    Eigen::Index n = d.A.rows(), cols = static_cast<Eigen::Index>(b1.size() + b2.size());
    if (cols == 0) continue;
    MatrixXd M(2 * n * n, cols);
    auto put = [&](Eigen::Index col, const MatrixXcd& img) {
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
          M(2 * (i * n + j), col) = img(i, j).real();
          M(2 * (i * n + j) + 1, col) = img(i, j).imag();
        }
    };
    Eigen::Index col = 0;
    for (const auto& e : b1) put(col++, d.G1.cwiseProduct(e));
    for (const auto& e : b2) put(col++, d.G2.cwiseProduct(e));
    MatrixXcd R = residual(d, G, D);
    VectorXd rhs(2 * n * n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        rhs(2 * (i * n + j)) = R(i, j).real();
        rhs(2 * (i * n + j) + 1) = R(i, j).imag();
      }
    VectorXd x = M.completeOrthogonalDecomposition().solve(rhs);
    MatrixXcd G2 = G, D2 = D;
    col = 0;
    for (const auto& e : b1) G2 += x(col++) * e;
    for (const auto& e : b2) D2 += x(col++) * e;
    AglerCertificate c = make_cert(d, G2, D2);
    if (valid(c, tol)) return c;
  }
  return std::nullopt;
}

Data build(const PickProblem& pr, double s) {
  Data d;
  d.A = pick_matrix(pr, s);
  d.G1 = kernel_matrix(pr, 1);
  d.G2 = kernel_matrix(pr, 2);
  d.W = d.G1.cwiseAbs2() + d.G2.cwiseAbs2();
  return d;
}

SolveResult run_dykstra(const Data& d, const SolveOptions& opt, Pair* warm) {
  SolveResult res;
  Eigen::Index n = d.A.rows();
  Pair x = warm ? *warm : Pair{MatrixXcd::Identity(n, n), MatrixXcd::Identity(n, n)};
  const int check_every = 25;
  // Eigenvalue floors: strictly feasible points are found fast with a floor; the last
  // phase (floor 0) handles data on the boundary, helped by the face polish.
  const double floors[] = {1e-3, 1e-5, 1e-7, 0.0};
  const int phase_iters = std::max(opt.max_iters / 4, 2 * opt.stagnation_window);
  for (int phase = 0; phase < 4; ++phase) {
    double floor = floors[phase];
    bool last = phase == 3;
    Pair q{MatrixXcd::Zero(n, n), MatrixXcd::Zero(n, n)}, y;
    double window_start_gap = -1;
    for (int it = 1; it <= phase_iters; ++it) {
      // The affine set needs no Dykstra correction.
      y = project_affine(d, x);
      Pair yq = y + q;
      x = {project_psd(yq.G, floor), project_psd(yq.D, floor)};
      q = yq - x;
      ++res.iterations;
      if (it % check_every == 0) {
        res.gap = (x - y).norm();
        AglerCertificate cy = make_cert(d, y.G, y.D);
        std::optional<AglerCertificate> c;
        if (valid(cy, opt.tol))
          c = cy;
        else if (last || res.gap < 1e-6)
          c = polish(d, x.G, x.D, opt.tol);
        if (c) {
          res.status = Feasibility::Feasible;
          res.certificate = c;
          if (warm) *warm = x;
          return res;
        }
      }
      if (it % opt.stagnation_window == 0) {
        res.gap = (x - y).norm();
        if (last) res.gap_trace.push_back(res.gap);
        bool stalled = window_start_gap > 0 && res.gap >= 10 * opt.tol && res.gap > 0.99 * window_start_gap;
        if (stalled) break;
        window_start_gap = res.gap;
      }
    }
    if (last && window_start_gap > 0 && res.gap >= 10 * opt.tol && res.gap > 0.99 * window_start_gap) {
      res.status = Feasibility::InfeasibleHeuristic;
      return res;
    }
  }
  res.status = Feasibility::Inconclusive;
  return res;
}

// Largest t with Gamma - tI >= 0 and Delta - tI >= 0, Delta eliminated through the constraint:
// Delta = (A - G1 o Gamma) / G2 entrywise (G2 has no zero entries inside the bidisk).
// Log-barrier path following; exits early once t > 0.
struct Lmi {
  MatrixXcd F0;
  std::vector<MatrixXcd> F;  // one per variable
  MatrixXcd at(const VectorXd& v) const {
    MatrixXcd X = F0;
    for (std::size_t k = 0; k < F.size(); ++k) X += v(static_cast<Eigen::Index>(k)) * F[k];
    return X;
  }
};

std::optional<double> logdet_pd(const MatrixXcd& X) {
  Eigen::LLT<MatrixXcd> llt(0.5 * (X + X.adjoint()));
  if (llt.info() != Eigen::Success) return std::nullopt;
  double s = 0;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    double dii = llt.matrixL()(i, i).real();
    if (!(dii > 0)) return std::nullopt;
    s += 2 * std::log(dii);
  }
  return s;
}

SolveResult run_barrier(const Data& d, const SolveOptions& opt) {
  SolveResult res;
  Eigen::Index n = d.A.rows();
  std::vector<MatrixXcd> basis = face_basis(MatrixXcd::Identity(n, n));
  auto p = static_cast<Eigen::Index>(basis.size()) + 1;  // last variable is t
  MatrixXcd I = MatrixXcd::Identity(n, n);
  Lmi L1{MatrixXcd::Zero(n, n), {}}, L2{d.A.cwiseQuotient(d.G2), {}};
  for (const auto& b : basis) {
    L1.F.push_back(b);
    L2.F.push_back(-d.G1.cwiseProduct(b).cwiseQuotient(d.G2));
  }
  L1.F.push_back(-I);
  L2.F.push_back(-I);

  VectorXd v = VectorXd::Zero(p);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (basis[k].trace().real() != 0) v(static_cast<Eigen::Index>(k)) = 1.0;  // Gamma = I
  v(p - 1) = 0;
  v(p - 1) = std::min(min_eig(L1.at(v)), min_eig(L2.at(v))) - 1.0;

  const double m = 2.0 * static_cast<double>(n);
  double tau = 1.0;
  auto barrier = [&](const VectorXd& x) -> std::optional<double> {
    auto a = logdet_pd(L1.at(x)), b = logdet_pd(L2.at(x));
    if (!a || !b) return std::nullopt;
    return -tau * x(p - 1) - *a - *b;
  };
  double upper = INFINITY;
  for (int outer = 0; outer < 60; ++outer) {
    for (int it = 0; it < 100; ++it) {
      ++res.iterations;
      VectorXd g = VectorXd::Zero(p);
      Eigen::MatrixXd H = Eigen::MatrixXd::Zero(p, p);
      g(p - 1) = -tau;
      for (const Lmi* L : {&L1, &L2}) {
        MatrixXcd Xi = L->at(v).inverse();
        std::vector<MatrixXcd> M;
        for (const auto& Fk : L->F) M.push_back(Xi * Fk);
        for (Eigen::Index k = 0; k < p; ++k) {
          g(k) -= M[static_cast<std::size_t>(k)].trace().real();
          for (Eigen::Index l = k; l < p; ++l) {
            double h = (M[static_cast<std::size_t>(k)].cwiseProduct(M[static_cast<std::size_t>(l)].transpose())).sum().real();
            H(k, l) += h;
            if (l != k) H(l, k) += h;
          }
        }
      }
      VectorXd dv = H.ldlt().solve(-g);
      if (!dv.allFinite()) dv = H.completeOrthogonalDecomposition().solve(-g);
      double dec = -g.dot(dv);
      if (dec < 1e-12) break;
      double f0 = *barrier(v), alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        auto f1 = barrier(v + alpha * dv);
        if (f1 && *f1 <= f0 - 0.25 * alpha * dec) {
          v += alpha * dv;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    double t = v(p - 1);
    upper = t + m / tau;
    if (t > 0 || upper < -opt.tol * 1e-2 || m / tau < 1e-13) break;
    tau *= 10.0;
  }
  MatrixXcd G = MatrixXcd::Zero(n, n);
  for (std::size_t k = 0; k < basis.size(); ++k) G += v(static_cast<Eigen::Index>(k)) * basis[k];
  MatrixXcd D = (d.A - d.G1.cwiseProduct(G)).cwiseQuotient(d.G2);
  AglerCertificate c = make_cert(d, G, D);
  res.margin = v(p - 1);
  res.margin_upper = upper;
  res.gap = std::max(0.0, -std::min(c.min_eig_gamma, c.min_eig_delta));
  if (valid(c, opt.tol)) {
    res.status = Feasibility::Feasible;
    res.certificate = c;
  } else if (upper < 0) {
    res.status = Feasibility::InfeasibleHeuristic;
  } else {
    res.status = Feasibility::Inconclusive;
  }
  return res;
}

SolveResult run(const Data& d, const SolveOptions& opt, Pair* warm) {
  if (opt.method == SolverMethod::Dykstra) return run_dykstra(d, opt, warm);
  return run_barrier(d, opt);
}

double max_abs_value(const PickProblem& pr) {
  double m = 0;
  for (const auto& w : pr.values) m = std::max(m, std::abs(to_cd(w)));
  return m;
}

}  // namespace

std::string to_string(Feasibility f) {
  switch (f) {
    case Feasibility::Feasible: return "Feasible";
    case Feasibility::InfeasibleHeuristic: return "InfeasibleHeuristic";
    case Feasibility::Inconclusive: return "Inconclusive";
  }
  return "?";
}

void PickProblem::validate() const {
  if (nodes.empty()) throw DomainError("Pick problem needs at least one node");
  if (nodes.size() != values.size()) throw DomainError("number of nodes and values differ");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].first.norm2() >= 1 || nodes[i].second.norm2() >= 1)
      throw DomainError("node " + std::to_string(i + 1) + " is not in the open bidisk");
    for (std::size_t j = 0; j < i; ++j)
      if (nodes[i] == nodes[j]) throw DomainError("nodes " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " coincide");
  }
}

PickProblem PickProblem::scaled(const Rational& inv_rho) const {
  PickProblem out = *this;
  for (auto& w : out.values) w = w * GaussianRational(inv_rho);
  return out;
}

MatrixXcd pick_matrix(const PickProblem& pr, double s) {
  auto n = static_cast<Eigen::Index>(pr.size());
  MatrixXcd A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      A(i, j) = 1.0 - s * to_cd(pr.values[static_cast<std::size_t>(i)]) * std::conj(to_cd(pr.values[static_cast<std::size_t>(j)]));
  return A;
}

MatrixXcd kernel_matrix(const PickProblem& pr, int k) {
  auto n = static_cast<Eigen::Index>(pr.size());
  MatrixXcd G(n, n);
  auto coord = [&](Eigen::Index i) {
    const Node& nd = pr.nodes[static_cast<std::size_t>(i)];
    return to_cd(k == 1 ? nd.first : nd.second);
  };
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) G(i, j) = 1.0 - coord(i) * std::conj(coord(j));
  return G;
}

CertificateCheck check_agler(const PickProblem& pr, const AglerCertificate& c, double residual_tol, double eig_tol,
                             double s) {
  CertificateCheck out;
  auto n = static_cast<Eigen::Index>(pr.size());
  if (c.Gamma.rows() != n || c.Gamma.cols() != n || c.Delta.rows() != n || c.Delta.cols() != n) {
    out.reason = "matrix dimensions do not match the problem";
    return out;
  }
  if ((c.Gamma - c.Gamma.adjoint()).norm() > 1e-12 * std::max(1.0, c.Gamma.norm()) ||
      (c.Delta - c.Delta.adjoint()).norm() > 1e-12 * std::max(1.0, c.Delta.norm())) {
    out.reason = "matrices are not hermitian";
    return out;
  }
  MatrixXcd R = pick_matrix(pr, s) - kernel_matrix(pr, 1).cwiseProduct(c.Gamma) - kernel_matrix(pr, 2).cwiseProduct(c.Delta);
  out.residual = R.norm();
  out.min_eig_gamma = min_eig(c.Gamma);
  out.min_eig_delta = min_eig(c.Delta);
  if (out.residual > residual_tol)
    out.reason = "residual " + std::to_string(out.residual) + " exceeds tolerance";
  else if (out.min_eig_gamma < -eig_tol || out.min_eig_delta < -eig_tol)
    out.reason = "a matrix has a negative eigenvalue";
  else
    out.ok = true;
  return out;
}

SolveResult solvable(const PickProblem& pr, const SolveOptions& opt) {
  pr.validate();
  return run(build(pr, 1.0), opt, nullptr);
}

NormResult minimal_norm(const PickProblem& pr, double tol, const SolveOptions& opt) {
  pr.validate();
  NormResult out;
  double wmax = max_abs_value(pr);
  if (wmax == 0.0) {
    Data d = build(pr, 0.0);
    out.certificate = run(d, opt, nullptr).certificate;
    out.certificate_scale = 0.0;
    return out;
  }
  // Feasibility in s = 1/rho^2 is an interval [0, s*]; s* <= 1/max|w|^2.
  double s_lo = 0.0, s_hi = 1.0 / (wmax * wmax);
  auto n = static_cast<Eigen::Index>(pr.size());
  Pair warm{MatrixXcd::Identity(n, n), MatrixXcd::Identity(n, n)};
  SolveResult r0 = run(build(pr, 0.0), opt, &warm);
  if (r0.status != Feasibility::Feasible) throw InternalError("zero-value problem not certified feasible");
  std::optional<AglerCertificate> lo_cert = r0.certificate;
  ++out.probes;
  // First probe at the lower bound for rho: often the answer for extremal data.
  {
    double s = s_hi * (1 - 1e-9);
    Pair w = warm;
    SolveResult r = run(build(pr, s), opt, &w);
    ++out.probes;
    if (r.status == Feasibility::Feasible) {
      s_lo = s;
      lo_cert = r.certificate;
      warm = w;
    }
  }
  auto rho = [](double s) { return s > 0 ? 1.0 / std::sqrt(s) : INFINITY; };
  while (rho(s_lo) - rho(s_hi) > tol) {
    double mid = 0.5 * (s_lo + s_hi);
    Pair w = warm;
    SolveResult r = run(build(pr, mid), opt, &w);
    ++out.probes;
    if (r.status == Feasibility::Feasible) {
      s_lo = mid;
      lo_cert = r.certificate;
      warm = w;
    } else {
      if (r.status == Feasibility::Inconclusive) ++out.inconclusive_probes;
      s_hi = mid;
    }
    if (out.probes > 200) break;
  }
  out.upper = rho(s_lo);
  out.lower = rho(s_hi);
  out.rho_star = 0.5 * (out.upper + out.lower);
  out.certificate = lo_cert;
  out.certificate_scale = s_lo;
  return out;
}

ExtremalReport is_extremal(const PickProblem& pr, double tol, bool check_minimality) {
  ExtremalReport rep;
  rep.norm = minimal_norm(pr, std::min(tol, 1e-5));
  rep.margin = rep.norm.rho_star - 1.0;
  rep.extremal = std::abs(rep.margin) <= tol;
  if (check_minimality) {
    bool minimal = true;
    if (pr.size() > 1) {
      for (std::size_t k = 0; k < pr.size(); ++k) {
        PickProblem sub;
        for (std::size_t j = 0; j < pr.size(); ++j)
          if (j != k) {
            sub.nodes.push_back(pr.nodes[j]);
            sub.values.push_back(pr.values[j]);
          }
        if (is_extremal(sub, tol, false).extremal) minimal = false;
      }
    }
    rep.minimal = minimal;
  }
  return rep;
}

UniquenessReport uniqueness_candidate(const std::vector<RationalInner>& solutions, const std::vector<Node>& nodes) {
  if (solutions.empty()) throw DomainError("uniqueness candidate needs at least one solution");
  UniquenessReport rep;
  rep.B = MultiPoly(2);
  for (std::size_t i = 0; i < solutions.size(); ++i)
    for (std::size_t j = i + 1; j < solutions.size(); ++j) {
      const RationalInner &a = solutions[i], &b = solutions[j];
      if (a.p.nvars() != 2 || b.p.nvars() != 2) throw DomainError("uniqueness candidate is bivariate");
      MultiPoly num = a.numerator * a.tau * b.p - b.numerator * b.tau * a.p;
      if (num.is_zero()) continue;
      MultiPoly den = a.p * b.p;
      num = exact_divide(num, gcd(num, den));
      rep.B = rep.B.is_zero() ? monic(num) : gcd(rep.B, num);
    }
  if (rep.B.is_zero()) {
    rep.whole_bidisk = true;
    rep.V = MultiPoly(2);
    rep.atoral = MultiPoly(2, GaussianRational(1));
    rep.nodes_on_V = true;
    rep.note = "fewer than two distinct solutions: uniqueness set possibly all of the bidisk";
    return rep;
  }
  if (rep.B.is_constant()) {
    rep.V = rep.B;
    rep.atoral = rep.B;
    rep.note = "solutions agree nowhere";
  } else {
    Split s = toral_atoral_split(rep.B);
    rep.V = s.toral;
    rep.atoral = s.atoral;
    if (!s.atoral.is_constant()) rep.atoral_torus_points = torus_intersection(s.atoral).finite_points;
  }
  rep.nodes_on_V = !rep.V.is_constant();
  for (const auto& [a, b] : nodes)
    if (!evaluate(rep.V, {a, b}).is_zero()) rep.nodes_on_V = false;
  return rep;
}

MultiPoly perturbation_g(const std::vector<MultiPoly>& toral_factors, const std::vector<Node>& torus_points) {
  MultiPoly g(2, GaussianRational(1));
  for (const auto& r : toral_factors) {
    if (r.nvars() != 2) throw DomainError("perturbation factors are bivariate");
    if (r.is_constant()) throw DomainError("perturbation factor is constant");
    g = g * r;
  }
  MultiPoly z1 = MultiPoly::variable(2, 0), z2 = MultiPoly::variable(2, 1);
  for (const auto& [t1, t2] : torus_points) {
    if (!t1.is_unimodular() || !t2.is_unimodular())
      throw DomainError("point (" + t1.to_string() + ", " + t2.to_string() + ") is not on the torus");
    g = g * (MultiPoly(2, GaussianRational(2)) - z1 * t1.conj() - z2 * t2.conj());
  }
  return g;
}

}  // namespace toral
