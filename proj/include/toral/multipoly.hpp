#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toral/gaussian.hpp"

namespace toral {

using Exponent = std::vector<int>;

/// Graded lexicographic order, descending, with z1 > z2 > ... .
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

int total_degree(const Exponent& e);

/// Sparse multivariate polynomial over Q(i). The zero polynomial has no terms;
/// stored coefficients are never zero. Iteration runs from the leading term down.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, GaussianRational, GrlexGreater>;

  explicit MultiPoly(std::size_t nvars = 2);
  MultiPoly(std::size_t nvars, const GaussianRational& c);

  static MultiPoly variable(std::size_t nvars, std::size_t k);
  static MultiPoly monomial(Exponent e, const GaussianRational& c);

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;

  GaussianRational coefficient(const Exponent& e) const;
  /// Adds c to the coefficient of z^e, dropping the term if it cancels.
  void add_term(const Exponent& e, const GaussianRational& c);

  const Exponent& leading_exponent() const;
  const GaussianRational& leading_coefficient() const;
  GaussianRational constant_term() const;

  /// Highest exponent of each variable. Throws DomainError for the zero polynomial.
  Exponent multidegree() const;
  int total_degree() const;
  int degree_in(std::size_t k) const;
  bool depends_on(std::size_t k) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const GaussianRational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const GaussianRational& c) { return a *= c; }
  friend MultiPoly operator*(const GaussianRational& c, MultiPoly a) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Canonical text: graded-lex order, variables z1..zN.
  std::string to_string() const;

 private:
  std::size_t nvars_;
  TermMap terms_;
};

MultiPoly pow(const MultiPoly& p, unsigned e);

/// Partial derivative in variable k (0-based).
MultiPoly derivative(const MultiPoly& p, std::size_t k);

/// Returns p/q; throws NotDivisibleError when q does not divide p.
MultiPoly exact_divide(const MultiPoly& p, const MultiPoly& q);
/// Division with remainder against a single divisor (grlex).
std::pair<MultiPoly, MultiPoly> divide_with_remainder(const MultiPoly& p, const MultiPoly& q);
bool divides(const MultiPoly& q, const MultiPoly& p);

/// z^d * conj(p(1/conj z)) with d the multidegree of p.
MultiPoly reflect(const MultiPoly& p);

struct SymmetryResult {
  bool symmetric = false;
  std::optional<GaussianRational> tau;
  /// When not symmetric: one exponent where the supports differ, or two
  /// exponents whose coefficient ratios disagree.
  std::vector<Exponent> mismatch;
};

/// Decides whether reflect(p) == tau * p for a unimodular tau.
SymmetryResult essential_symmetry(const MultiPoly& p);

/// Splits p = unit * monic, where monic has grlex-leading coefficient 1.
std::pair<GaussianRational, MultiPoly> normalize(const MultiPoly& p);
MultiPoly monic(const MultiPoly& p);

GaussianRational evaluate(const MultiPoly& p, const std::vector<GaussianRational>& point);
/// Substitutes z_k = value, keeping the variable count.
MultiPoly substitute(const MultiPoly& p, std::size_t k, const GaussianRational& value);
/// Replaces z_k by z_k + shift.
MultiPoly shift_variable(const MultiPoly& p, std::size_t k, const GaussianRational& shift);
/// Coefficients of p viewed as a polynomial in z_k (index = degree in z_k).
std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t k);
MultiPoly multiply_monomial(const MultiPoly& p, const Exponent& e);

/// Deterministic total order on polynomials: total degree, then term list.
bool canonical_less(const MultiPoly& a, const MultiPoly& b);

std::string variable_name(std::size_t k);

}  // namespace toral
