#include "toral/algebra.hpp"

#include <algorithm>

#include "toral/errors.hpp"
#include "zfactor.hpp"

namespace toral {
namespace {

// Bivariate polynomial as a polynomial in the main variable whose
// coefficients are univariate in the other variable.
using BiPoly = std::vector<UPoly>;

void require_bivariate(const MultiPoly& p) {
  if (p.nvars() > 2) throw DomainError("operation supports at most two variables");
}

BiPoly to_bipoly(const MultiPoly& p, std::size_t main) {
  std::size_t other = 1 - main;
  int dm = std::max(p.degree_in(main), 0);
  std::vector<std::vector<GaussianRational>> c(dm + 1);
  for (const auto& [e, v] : p.terms()) {
    auto& row = c[e[main]];
    if (static_cast<int>(row.size()) <= e[other]) row.resize(e[other] + 1);
    row[e[other]] = v;
  }
  BiPoly out;
  for (auto& row : c) out.emplace_back(std::move(row));
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

MultiPoly from_bipoly(const BiPoly& b, std::size_t main) {
  std::size_t other = 1 - main;
  MultiPoly p(2);
  Exponent e(2, 0);
  for (std::size_t j = 0; j < b.size(); ++j) {
    e[main] = static_cast<int>(j);
    for (std::size_t k = 0; k < b[j].coeffs().size(); ++k) {
      e[other] = static_cast<int>(k);
      p.add_term(e, b[j].coeffs()[k]);
    }
  }
  return p;
}

UPoly bi_content(const BiPoly& b) {
  UPoly g;
  for (const auto& c : b) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

BiPoly bi_divide(const BiPoly& b, const UPoly& c) {
  BiPoly out;
  for (const auto& x : b) out.push_back(exact_quotient(x, c));
  return out;
}

int bi_degree(const BiPoly& b) { return static_cast<int>(b.size()) - 1; }

BiPoly prem(const BiPoly& a, const BiPoly& b) {
  BiPoly r = a;
  int db = bi_degree(b);
  const UPoly& lb = b.back();
  while (bi_degree(r) >= db) {
    int shift = bi_degree(r) - db;
    UPoly lr = r.back();
    for (auto& c : r) c = c * lb;
    for (int j = 0; j <= db; ++j) r[j + shift] -= lr * b[j];
    while (!r.empty() && r.back().is_zero()) r.pop_back();
  }
  return r;
}

MultiPoly bivariate_gcd(const MultiPoly& p, const MultiPoly& q) {
  const std::size_t y = 1;
  if (!p.depends_on(y) && !q.depends_on(y)) {
    UPoly g = gcd(to_univariate(p, 0), to_univariate(q, 0));
    return from_univariate(g, 2, 0);
  }
  BiPoly a = to_bipoly(p, y);
  BiPoly b = to_bipoly(q, y);
  UPoly ca = bi_content(a), cb = bi_content(b);
  UPoly c = gcd(ca, cb);
  a = bi_divide(a, ca);
  b = bi_divide(b, cb);
  if (bi_degree(a) < bi_degree(b)) std::swap(a, b);
  BiPoly g;
  if (bi_degree(b) == 0) {
    g = BiPoly{UPoly(GaussianRational(1))};
  } else {
    for (;;) {
      BiPoly r = prem(a, b);
      if (r.empty()) {
        g = b;
        break;
      }
      if (bi_degree(r) == 0) {
        g = BiPoly{UPoly(GaussianRational(1))};
        break;
      }
      a = std::move(b);
      b = bi_divide(r, bi_content(r));
    }
  }
  g = bi_divide(g, bi_content(g));
  for (auto& x : g) x = x * c;
  return monic(from_bipoly(g, y));
}

using Matrix = std::vector<std::vector<UPoly>>;

UPoly bareiss_determinant(Matrix m) {
  std::size_t n = m.size();
  if (n == 0) return UPoly(GaussianRational(1));
  bool negate = false;
  UPoly prev(GaussianRational(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return {};
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = exact_quotient(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      m[i][k] = UPoly();
    }
    prev = m[k][k];
  }
  UPoly det = m[n - 1][n - 1];
  return negate ? -det : det;
}

UPoly sylvester_resultant(const BiPoly& a, const BiPoly& b) {
  int da = bi_degree(a), db = bi_degree(b);
  std::size_t n = static_cast<std::size_t>(da + db);
  Matrix m(n, std::vector<UPoly>(n));
  for (int i = 0; i < db; ++i)
    for (int j = 0; j <= da; ++j) m[i][i + j] = a[da - j];
  for (int i = 0; i < da; ++i)
    for (int j = 0; j <= db; ++j) m[db + i][i + j] = b[db - j];
  return bareiss_determinant(std::move(m));
}

std::vector<std::pair<UPoly, int>> yun(const UPoly& f) {
  std::vector<std::pair<UPoly, int>> out;
  if (f.degree() <= 0) return out;
  UPoly fd = f.derivative();
  UPoly b = gcd(f, fd);
  UPoly c = exact_quotient(f, b);
  UPoly d = exact_quotient(fd, b) - c.derivative();
  for (int i = 1; c.degree() > 0; ++i) {
    UPoly a = gcd(c, d);
    if (a.degree() > 0) out.emplace_back(a.monic(), i);
    c = exact_quotient(c, a);
    d = exact_quotient(d, a) - c.derivative();
  }
  return out;
}

// Squarefree decomposition of a polynomial primitive in z2 with respect to z2.
std::vector<std::pair<MultiPoly, int>> yun_bivariate(const MultiPoly& f) {
  std::vector<std::pair<MultiPoly, int>> out;
  const std::size_t y = 1;
  if (!f.depends_on(y)) return out;
  MultiPoly fd = derivative(f, y);
  MultiPoly b = gcd(f, fd);
  MultiPoly c = exact_divide(f, b);
  MultiPoly d = exact_divide(fd, b) - derivative(c, y);
  for (int i = 1; c.depends_on(y); ++i) {
    MultiPoly a = gcd(c, d);
    if (!a.is_constant()) out.emplace_back(monic(a), i);
    c = exact_divide(c, a);
    d = exact_divide(d, a) - derivative(c, y);
  }
  return out;
}

// Gaussian integers ordered by norm, used as evaluation points.
std::vector<GaussianRational> evaluation_points(int count) {
  std::vector<std::pair<int, int>> pts;
  for (int r = -6; r <= 6; ++r)
    for (int s = -6; s <= 6; ++s) pts.emplace_back(r, s);
  std::stable_sort(pts.begin(), pts.end(), [](auto a, auto b) {
    int na = a.first * a.first + a.second * a.second;
    int nb = b.first * b.first + b.second * b.second;
    if (na != nb) return na < nb;
    if (a.second != b.second) return std::abs(a.second) < std::abs(b.second);
    return a > b;
  });
  std::vector<GaussianRational> out;
  for (int k = 0; k < count && k < static_cast<int>(pts.size()); ++k)
    out.emplace_back(Rational(pts[k].first), Rational(pts[k].second));
  return out;
}

UPoly rational_to_upoly(const detail::ZPoly& z) {
  std::vector<GaussianRational> c;
  for (const auto& v : z) c.emplace_back(Rational(v));
  return UPoly(std::move(c));
}

// Power series in x = z1 with coefficients univariate in y = z2.
using Series = std::vector<UPoly>;

Series series_mul(const Series& a, const Series& b, std::size_t terms) {
  Series r(terms);
  for (std::size_t i = 0; i < a.size() && i < terms; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < terms; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

MultiPoly series_to_poly(const Series& s) {
  MultiPoly p(2);
  Exponent e(2, 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    e[0] = static_cast<int>(i);
    for (std::size_t j = 0; j < s[i].coeffs().size(); ++j) {
      e[1] = static_cast<int>(j);
      p.add_term(e, s[i].coeffs()[j]);
    }
  }
  return p;
}

MultiPoly primitive_in_y(const MultiPoly& g) { return exact_divide(g, content_in(g, 1)); }

// Factors a squarefree polynomial that is primitive in z2 and depends on both
// variables: specialize z1, factor, Hensel-lift in z1, recombine.
std::vector<MultiPoly> factor_bivariate_primitive(const MultiPoly& f) {
  const std::size_t y = 1;
  int n = f.degree_in(y);
  if (n == 1) return {monic(f)};

  auto lc_y = coefficients_in(f, y).back();
  GaussianRational best_a;
  std::vector<UPoly> best;
  int lucky = 0;
  for (const auto& a : evaluation_points(169)) {
    if (lucky == 3) break;
    if (evaluate(lc_y, {a, GaussianRational(0)}).is_zero()) continue;
    UPoly fa = to_univariate(substitute(f, 0, a), y);
    if (gcd(fa, fa.derivative()).degree() != 0) continue;
    ++lucky;
    auto u = factor_univariate(fa);
    if (best.empty() || u.size() < best.size()) {
      best = std::move(u);
      best_a = a;
    }
    if (best.size() == 1) return {monic(f)};
  }
  if (best.empty()) throw InternalError("no lucky evaluation point found for bivariate factorization");

  MultiPoly F = shift_variable(f, 0, best_a);
  const std::size_t K = static_cast<std::size_t>(F.degree_in(0)) + 1;
  Series Fs(K);
  for (const auto& [e, c] : F.terms()) {
    std::vector<GaussianRational> v(e[1] + 1);
    v[e[1]] = c;
    Fs[e[0]] += UPoly(std::move(v));
  }
  auto lead_series = [&](const MultiPoly& g) {
    UPoly L = to_univariate(coefficients_in(g, y).back(), 0);
    return L;
  };
  UPoly L = lead_series(F);
  std::vector<GaussianRational> linv(K);
  linv[0] = L[0].inverse();
  for (std::size_t k = 1; k < K; ++k) {
    GaussianRational acc;
    for (std::size_t j = 1; j <= k; ++j) acc += L[j] * linv[k - j];
    linv[k] = -acc * linv[0];
  }
  Series M(K);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t j = 0; j <= k; ++j)
      if (!linv[j].is_zero()) M[k] += Fs[k - j] * linv[j];

  const std::size_t r = best.size();
  std::vector<UPoly> inv(r);
  for (std::size_t j = 0; j < r; ++j) {
    UPoly others(GaussianRational(1));
    for (std::size_t i = 0; i < r; ++i)
      if (i != j) others = others * best[i];
    auto eg = extended_gcd(others, best[j]);
    if (eg.g.degree() != 0) throw InternalError("modular factors not coprime in Hensel lifting");
    inv[j] = eg.s;
  }
  std::vector<Series> U(r, Series(K));
  for (std::size_t j = 0; j < r; ++j) U[j][0] = best[j];
  for (std::size_t k = 1; k < K; ++k) {
    Series prod(k + 1);
    prod[0] = UPoly(GaussianRational(1));
    for (std::size_t j = 0; j < r; ++j) prod = series_mul(prod, U[j], k + 1);
    UPoly E = M[k] - prod[k];
    if (E.is_zero()) continue;
    for (std::size_t j = 0; j < r; ++j) U[j][k] = divmod(E * inv[j], best[j]).second;
  }

  std::vector<MultiPoly> found;
  MultiPoly cur = F;
  std::size_t s = 1;
  while (2 * s <= U.size()) {
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    bool hit = false;
    for (;;) {
      Series G(K);
      UPoly Lc = lead_series(cur);
      for (std::size_t i = 0; i < K; ++i) G[i] = UPoly(Lc[i]);
      for (std::size_t i : idx) G = series_mul(G, U[i], K);
      MultiPoly cand = series_to_poly(G);
      if (!cand.is_zero() && cand.depends_on(y)) {
        cand = primitive_in_y(cand);
        auto [q, rem] = divide_with_remainder(cur, cand);
        if (rem.is_zero()) {
          found.push_back(cand);
          cur = q;
          for (std::size_t i = s; i-- > 0;) U.erase(U.begin() + static_cast<long>(idx[i]));
          hit = true;
          break;
        }
      }
      // next combination
      std::size_t m = U.size();
      std::size_t i = s;
      while (i-- > 0) {
        if (idx[i] < m - s + i) break;
        if (i == 0) {
          i = static_cast<std::size_t>(-1);
          break;
        }
      }
      if (i == static_cast<std::size_t>(-1)) break;
      ++idx[i];
      for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!hit) ++s;
  }
  if (cur.depends_on(y)) found.push_back(cur);
  std::vector<MultiPoly> out;
  for (const auto& g : found) out.push_back(monic(shift_variable(g, 0, -best_a)));
  return out;
}

}  // namespace

MultiPoly content_in(const MultiPoly& p, std::size_t var) {
  require_bivariate(p);
  if (p.nvars() == 1) {
    if (p.depends_on(0)) return MultiPoly(1, GaussianRational(1));
    return monic(p);
  }
  std::size_t other = 1 - var;
  UPoly g;
  for (const auto& c : coefficients_in(p, var)) g = gcd(g, to_univariate(c, other));
  return from_univariate(g, 2, other);
}

MultiPoly gcd(const MultiPoly& p, const MultiPoly& q) {
  if (p.nvars() != q.nvars()) throw DomainError("variable count mismatch");
  require_bivariate(p);
  if (p.is_zero()) return monic(q);
  if (q.is_zero()) return monic(p);
  if (p.nvars() == 1) return from_univariate(gcd(to_univariate(p, 0), to_univariate(q, 0)), 1, 0);
  return bivariate_gcd(p, q);
}

MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var) {
  if (p.nvars() != 2 || q.nvars() != 2) throw DomainError("resultant needs two variables");
  if (var > 1) throw DomainError("resultant variable out of range");
  if (p.degree_in(var) < 1 || q.degree_in(var) < 1)
    throw DomainError("resultant needs positive degree in " + variable_name(var));
  UPoly r = sylvester_resultant(to_bipoly(p, var), to_bipoly(q, var));
  return from_univariate(r, 2, 1 - var);
}

GaussianRational resultant(const UPoly& p, const UPoly& q) {
  if (p.degree() < 1 || q.degree() < 1) throw DomainError("resultant needs positive degrees");
  BiPoly a, b;
  for (const auto& c : p.coeffs()) a.emplace_back(c);
  for (const auto& c : q.coeffs()) b.emplace_back(c);
  return sylvester_resultant(a, b)[0];
}

MultiPoly Factorization::expand(std::size_t nvars) const {
  MultiPoly r(nvars, unit);
  for (const auto& [f, m] : factors) r = r * pow(f, static_cast<unsigned>(m));
  return r;
}

std::vector<UPoly> factor_univariate(const UPoly& f) {
  if (f.degree() <= 0) return {};
  if (f.degree() == 1) return {f.monic()};
  const GaussianRational I = GaussianRational::i();
  for (long s : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L, 5L, -5L, 6L, -6L, 7L, -7L, 8L, -8L}) {
    GaussianRational shift = I * GaussianRational(s);
    UPoly g = f.shift(-shift).monic();
    UPoly norm = g * g.conj();
    if (gcd(norm, norm.derivative()).degree() != 0) continue;
    // Clear denominators: norm has rational coefficients.
    Integer den(1);
    for (const auto& c : norm.coeffs()) {
      if (!c.is_real()) throw InternalError("norm polynomial is not rational");
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.re().get_den_mpz_t());
    }
    detail::ZPoly z;
    for (const auto& c : norm.coeffs()) z.push_back(Integer(c.re() * den));
    Integer content(0);
    for (const auto& c : z) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    if (z.back() < 0) content = -content;
    for (auto& c : z) c /= content;
    std::vector<UPoly> out;
    UPoly check(GaussianRational(1));
    for (const auto& zf : detail::factor_squarefree_z(z)) {
      UPoly gj = gcd(g, rational_to_upoly(zf));
      if (gj.degree() < 1) continue;
      UPoly fj = gj.shift(shift).monic();
      check = check * fj;
      out.push_back(fj);
    }
    if (!(check == f.monic())) throw InternalError("univariate factorization did not reproduce its input");
    std::sort(out.begin(), out.end(), [](const UPoly& a, const UPoly& b) {
      return canonical_less(from_univariate(a, 1, 0), from_univariate(b, 1, 0));
    });
    return out;
  }
  throw InternalError("no shift produced a squarefree norm");
}

Factorization squarefree_decomposition(const MultiPoly& p) {
  if (p.is_zero()) throw DomainError("squarefree decomposition of the zero polynomial");
  require_bivariate(p);
  Factorization out;
  if (p.nvars() == 1) {
    for (auto& [u, m] : yun(to_univariate(p, 0))) out.factors.emplace_back(from_univariate(u, 1, 0), m);
  } else {
    MultiPoly cont = content_in(p, 1);
    for (auto& [u, m] : yun(to_univariate(cont, 0))) out.factors.emplace_back(from_univariate(u, 2, 0), m);
    MultiPoly pp = exact_divide(p, cont);
    for (auto& fm : yun_bivariate(pp)) out.factors.push_back(std::move(fm));
  }
  MultiPoly prod = out.expand(p.nvars());
  prod = MultiPoly(p.nvars(), GaussianRational(1)) * prod;
  MultiPoly ratio = exact_divide(p, Factorization{GaussianRational(1), out.factors}.expand(p.nvars()));
  if (!ratio.is_constant()) throw InternalError("squarefree decomposition lost a factor");
  out.unit = ratio.constant_term();
  return out;
}

MultiPoly squarefree_part(const MultiPoly& p) {
  MultiPoly r(p.nvars(), GaussianRational(1));
  for (const auto& [f, m] : factor_irreducible(p).factors) r = r * f;
  return r;
}

Factorization factor_irreducible(const MultiPoly& p) {
  if (p.is_zero()) throw DomainError("factorization of the zero polynomial");
  require_bivariate(p);
  Factorization out;
  if (p.is_constant()) {
    out.unit = p.constant_term();
    return out;
  }
  Factorization sqf = squarefree_decomposition(p);
  for (const auto& [s, m] : sqf.factors) {
    std::vector<MultiPoly> parts;
    if (s.nvars() == 1) {
      for (auto& u : factor_univariate(to_univariate(s, 0))) parts.push_back(from_univariate(u, 1, 0));
    } else if (!s.depends_on(1)) {
      for (auto& u : factor_univariate(to_univariate(s, 0))) parts.push_back(from_univariate(u, 2, 0));
    } else if (!s.depends_on(0)) {
      for (auto& u : factor_univariate(to_univariate(s, 1))) parts.push_back(from_univariate(u, 2, 1));
    } else {
      parts = factor_bivariate_primitive(s);
    }
    for (auto& f : parts) out.factors.emplace_back(monic(f), m);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  MultiPoly rest = Factorization{GaussianRational(1), out.factors}.expand(p.nvars());
  auto [ratio, rem] = divide_with_remainder(p, rest);
  if (!rem.is_zero() || !ratio.is_constant())
    throw InternalError("factorization failed its round-trip check for " + p.to_string());
  out.unit = ratio.constant_term();
  return out;
}

}  // namespace toral
