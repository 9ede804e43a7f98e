#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "toral/multipoly.hpp"
#include "toral/upoly.hpp"

namespace toral {

/// Greatest common divisor for at most two variables, normalized so the
/// grlex-leading coefficient is 1. gcd(0, 0) = 0.
MultiPoly gcd(const MultiPoly& p, const MultiPoly& q);

/// Sylvester resultant of p and q with respect to z_var (0-based), two variables.
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var);

/// Resultant of two univariate polynomials of positive degree.
GaussianRational resultant(const UPoly& p, const UPoly& q);

struct Factorization {
  GaussianRational unit;
  /// Monic irreducible factors with multiplicities, sorted by canonical_less.
  std::vector<std::pair<MultiPoly, int>> factors;

  MultiPoly expand(std::size_t nvars) const;
};

/// Factorization over Q(i) into irreducibles (at most two variables).
Factorization factor_irreducible(const MultiPoly& p);

/// Monic irreducible factors of a squarefree univariate polynomial over Q(i).
std::vector<UPoly> factor_univariate(const UPoly& f);

/// Pairwise coprime squarefree parts with multiplicities (monic), plus unit.
Factorization squarefree_decomposition(const MultiPoly& p);
/// Product of the distinct irreducible factors, monic.
MultiPoly squarefree_part(const MultiPoly& p);

/// Content of p viewed as a polynomial in z_var, as a polynomial in the other variable.
MultiPoly content_in(const MultiPoly& p, std::size_t var);

}  // namespace toral
