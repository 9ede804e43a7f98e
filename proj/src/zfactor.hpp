#pragma once

// Univariate factorization over the integers (Zassenhaus): modular
// factorization, Hensel lifting and trial recombination.

#include <vector>

#include "toral/gaussian.hpp"

namespace toral::detail {

using ZPoly = std::vector<Integer>;  // ascending coefficients, trimmed

/// f must be primitive and squarefree with positive leading coefficient and
/// degree >= 1. Returns primitive irreducible factors with positive leading
/// coefficients whose product is f.
std::vector<ZPoly> factor_squarefree_z(const ZPoly& f);

}  // namespace toral::detail
