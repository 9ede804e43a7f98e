#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "toral/gaussian.hpp"
#include "toral/multipoly.hpp"

namespace toral {

/// Dense univariate polynomial over Q(i); coeffs()[k] multiplies x^k.
/// Trailing zeros are trimmed so the zero polynomial is empty.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<GaussianRational> coeffs);
  UPoly(const GaussianRational& c);  // NOLINT(google-explicit-constructor)

  static UPoly x();

  const std::vector<GaussianRational>& coeffs() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  GaussianRational lc() const { return c_.empty() ? GaussianRational() : c_.back(); }
  GaussianRational operator[](std::size_t k) const { return k < c_.size() ? c_[k] : GaussianRational(); }

  UPoly operator-() const;
  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(UPoly a, const GaussianRational& s);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  GaussianRational eval(const GaussianRational& x) const;
  UPoly derivative() const;
  UPoly monic() const;
  /// x^deg * conj(f(1/conj x)).
  UPoly reflect() const;
  UPoly conj() const;
  /// f(x + s).
  UPoly shift(const GaussianRational& s) const;
  /// Number of trailing zero coefficients (multiplicity of the root 0).
  int low_order() const;
  UPoly divide_by_x_power(int k) const;

 private:
  void trim();
  std::vector<GaussianRational> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly exact_quotient(const UPoly& a, const UPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
/// Returns (g, s, t) with s*a + t*b = g monic.
struct ExtendedGcd {
  UPoly g, s, t;
};
ExtendedGcd extended_gcd(const UPoly& a, const UPoly& b);
UPoly squarefree_part(const UPoly& f);
UPoly pow(const UPoly& f, unsigned e);

/// Views a polynomial depending only on z_k as univariate.
UPoly to_univariate(const MultiPoly& p, std::size_t k);
MultiPoly from_univariate(const UPoly& u, std::size_t nvars, std::size_t k);

}  // namespace toral
