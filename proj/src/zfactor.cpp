#include "zfactor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

#include "toral/errors.hpp"

namespace toral::detail {
namespace {

using Fp = std::vector<std::int64_t>;

void trim(Fp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Fp& a) { return static_cast<int>(a.size()) - 1; }
int deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

std::int64_t mod(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = mod(a, p);
  while (nr) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw InternalError("non-invertible element mod p");
  return mod(t, p);
}

Fp fp_sub(const Fp& a, const Fp& b, std::int64_t p) {
  Fp r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = mod(r[i] - b[i], p);
  trim(r);
  return r;
}

Fp fp_mul(const Fp& a, const Fp& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Fp r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

std::pair<Fp, Fp> fp_divmod(const Fp& a, const Fp& b, std::int64_t p) {
  if (b.empty()) throw InternalError("division by zero polynomial mod p");
  Fp r = a;
  int db = deg(b);
  if (deg(a) < db) return {Fp{}, a};
  Fp q(deg(a) - db + 1, 0);
  std::int64_t inv = inv_mod(b.back(), p);
  for (int k = deg(a) - db; k >= 0; --k) {
    std::int64_t t = r[k + db] * inv % p;
    q[k] = t;
    if (!t) continue;
    for (int j = 0; j <= db; ++j) r[k + j] = mod(r[k + j] - t * b[j], p);
  }
  r.resize(db);
  trim(r);
  trim(q);
  return {q, r};
}

Fp fp_rem(const Fp& a, const Fp& b, std::int64_t p) { return fp_divmod(a, b, p).second; }

Fp fp_monic(const Fp& a, std::int64_t p) {
  if (a.empty()) return a;
  std::int64_t inv = inv_mod(a.back(), p);
  Fp r = a;
  for (auto& c : r) c = c * inv % p;
  return r;
}

Fp fp_gcd(Fp a, Fp b, std::int64_t p) {
  while (!b.empty()) {
    Fp r = fp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

/// (g, s, t) with s*a + t*b = g (monic).
std::tuple<Fp, Fp, Fp> fp_xgcd(const Fp& a, const Fp& b, std::int64_t p) {
  Fp r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = fp_divmod(r0, r1, p);
    Fp s = fp_sub(s0, fp_mul(q, s1, p), p);
    Fp t = fp_sub(t0, fp_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  std::int64_t inv = inv_mod(r0.back(), p);
  for (auto* v : {&r0, &s0, &t0})
    for (auto& c : *v) c = c * inv % p;
  return {r0, s0, t0};
}

Fp fp_derivative(const Fp& a, std::int64_t p) {
  if (a.size() <= 1) return {};
  Fp r(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) r[k - 1] = a[k] * static_cast<std::int64_t>(k % p) % p;
  trim(r);
  return r;
}

Fp fp_powmod(const Fp& base, const Integer& e, const Fp& f, std::int64_t p) {
  Fp result{1};
  Fp b = fp_rem(base, f, p);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = fp_rem(fp_mul(result, result, p), f, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = fp_rem(fp_mul(result, b, p), f, p);
  }
  return result;
}

Fp to_fp(const ZPoly& a, std::int64_t p) {
  Fp r(a.size());
  Integer t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_fdiv_r_ui(t.get_mpz_t(), a[i].get_mpz_t(), static_cast<unsigned long>(p));
    r[i] = static_cast<std::int64_t>(t.get_si());
  }
  trim(r);
  return r;
}

ZPoly from_fp(const Fp& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<long>(a[i]);
  return r;
}

// Distinct-degree then equal-degree factorization of a monic squarefree f.
std::vector<Fp> factor_mod_p(const Fp& f, std::int64_t p) {
  std::vector<std::pair<Fp, int>> ddf;
  Fp rest = f;
  Fp x{0, 1};
  Fp h = x;
  Integer pz(static_cast<long>(p));
  for (int i = 1; 2 * i <= deg(rest); ++i) {
    h = fp_powmod(h, pz, rest, p);
    Fp g = fp_gcd(fp_sub(h, x, p), rest, p);
    if (deg(g) > 0) {
      ddf.emplace_back(g, i);
      rest = fp_divmod(rest, g, p).first;
      h = fp_rem(h, rest, p);
    }
  }
  if (deg(rest) > 0) ddf.emplace_back(rest, deg(rest));

  std::mt19937_64 rng(0x70a1u);
  std::vector<Fp> out;
  std::vector<std::pair<Fp, int>> work = ddf;
  while (!work.empty()) {
    auto [g, d] = work.back();
    work.pop_back();
    if (deg(g) == d) {
      out.push_back(fp_monic(g, p));
      continue;
    }
    Integer e;
    mpz_pow_ui(e.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    std::uniform_int_distribution<std::int64_t> dist(0, p - 1);
    for (;;) {
      Fp a(deg(g));
      for (auto& c : a) c = dist(rng);
      trim(a);
      if (deg(a) < 1) continue;
      Fp b = fp_sub(fp_powmod(a, e, g, p), Fp{1}, p);
      Fp c = fp_gcd(b, g, p);
      if (deg(c) > 0 && deg(c) < deg(g)) {
        work.emplace_back(c, d);
        work.emplace_back(fp_divmod(g, c, p).first, d);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Fp& a, const Fp& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return out;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

ZPoly zmod(ZPoly a, const Integer& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  trim(a);
  return a;
}

ZPoly zsymmetric(ZPoly a, const Integer& m) {
  Integer half = m / 2;
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  trim(a);
  return a;
}

ZPoly zscale(ZPoly a, const Integer& s) {
  for (auto& c : a) c *= s;
  trim(a);
  return a;
}

ZPoly primitive(ZPoly a) {
  Integer g(0);
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) return a;
  if (a.back() < 0) g = -g;
  for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return a;
}

/// Exact division over Z; returns false when g does not divide f.
bool zdivide(const ZPoly& f, const ZPoly& g, ZPoly& quotient) {
  ZPoly r = f;
  int dg = deg(g);
  if (deg(f) < dg) return false;
  ZPoly q(deg(f) - dg + 1, Integer(0));
  for (int k = deg(f) - dg; k >= 0; --k) {
    const Integer& top = r[k + dg];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), g.back().get_mpz_t())) return false;
    Integer t = top / g.back();
    q[k] = t;
    for (int j = 0; j <= dg; ++j) r[k + j] -= t * g[j];
  }
  for (const auto& c : r)
    if (c != 0) return false;
  trim(q);
  quotient = std::move(q);
  return true;
}

std::pair<ZPoly, ZPoly> hensel_pair(const ZPoly& f, const Fp& g, const Fp& h, std::int64_t p, int k,
                                    const Integer& pk) {
  auto [one, s, t] = fp_xgcd(g, h, p);
  if (one.size() != 1) throw InternalError("Hensel factors are not coprime mod p");
  ZPoly G = from_fp(g);
  ZPoly H = from_fp(h);
  Integer a = f.back();
  mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), pk.get_mpz_t());
  H.back() = a;
  Integer m(static_cast<long>(p));
  for (int j = 1; j < k; ++j) {
    ZPoly e = zmod(zsub(f, zmul(G, H)), pk);
    for (auto& c : e) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    Fp ep = to_fp(e, p);
    Fp dg = fp_rem(fp_mul(t, ep, p), g, p);
    auto [dh, rem] = fp_divmod(fp_sub(ep, fp_mul(dg, h, p), p), g, p);
    if (!rem.empty()) throw InternalError("Hensel step left a remainder");
    ZPoly DG = from_fp(dg), DH = from_fp(dh);
    G.resize(std::max(G.size(), DG.size()), Integer(0));
    H.resize(std::max(H.size(), DH.size()), Integer(0));
    for (std::size_t i = 0; i < DG.size(); ++i) G[i] += m * DG[i];
    for (std::size_t i = 0; i < DH.size(); ++i) H[i] += m * DH[i];
    G = zmod(G, pk);
    H = zmod(H, pk);
    m *= p;
  }
  return {G, H};
}

std::vector<ZPoly> multi_hensel(const ZPoly& f, const std::vector<Fp>& u, std::int64_t p, int k,
                                const Integer& pk) {
  std::vector<ZPoly> lifted;
  ZPoly F = zmod(f, pk);
  std::int64_t a_p = to_fp(ZPoly{f.back()}, p).at(0);
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    Fp h{a_p};
    for (std::size_t j = i + 1; j < u.size(); ++j) h = fp_mul(h, u[j], p);
    auto [G, H] = hensel_pair(F, u[i], h, p, k, pk);
    lifted.push_back(std::move(G));
    F = std::move(H);
  }
  Integer inv;
  Integer lcF = F.back();
  if (!mpz_invert(inv.get_mpz_t(), lcF.get_mpz_t(), pk.get_mpz_t()))
    throw InternalError("leading coefficient not invertible mod p^k");
  lifted.push_back(zmod(zscale(F, inv), pk));
  return lifted;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  std::size_t s = idx.size();
  for (std::size_t i = s; i-- > 0;) {
    if (idx[i] < n - s + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

std::vector<ZPoly> factor_squarefree_z(const ZPoly& f_in) {
  ZPoly f = f_in;
  trim(f);
  if (deg(f) < 1) throw InternalError("factor_squarefree_z needs positive degree");
  if (deg(f) == 1) return {f};

  // Choose among a few suitable primes the one giving the fewest modular factors.
  std::int64_t best_p = 0;
  std::vector<Fp> best;
  int tried = 0;
  for (std::int64_t p = 3; tried < 5 && p < 100000; p += 2) {
    if (!is_prime(p)) continue;
    Fp fp = to_fp(f, p);
    if (deg(fp) != deg(f)) continue;
    if (deg(fp_gcd(fp, fp_derivative(fp, p), p)) != 0) continue;
    ++tried;
    auto u = factor_mod_p(fp_monic(fp, p), p);
    if (best.empty() || u.size() < best.size()) {
      best = std::move(u);
      best_p = p;
    }
    if (best.size() == 1) break;
  }
  if (best.empty()) throw InternalError("no suitable prime for modular factorization");
  if (best.size() == 1) return {f};

  // Coefficient bound for factors (Mignotte), squared: 4 a^2 4^n (n+1) max^2.
  int n = deg(f);
  Integer maxc(0);
  for (const auto& c : f) maxc = std::max<Integer>(maxc, abs(c));
  Integer bound2 = 4 * f.back() * f.back() * (n + 1) * maxc * maxc;
  mpz_mul_2exp(bound2.get_mpz_t(), bound2.get_mpz_t(), 2 * static_cast<unsigned long>(n));
  Integer pk(static_cast<long>(best_p));
  int k = 1;
  while (pk * pk <= bound2) {
    pk *= best_p;
    ++k;
  }
  std::vector<ZPoly> lifted = multi_hensel(f, best, best_p, k, pk);

  std::vector<ZPoly> out;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    bool found = false;
    do {
      ZPoly G{f.back()};
      for (std::size_t i : idx) G = zmod(zmul(G, lifted[i]), pk);
      G = primitive(zsymmetric(G, pk));
      ZPoly q;
      if (deg(G) >= 1 && zdivide(f, G, q)) {
        out.push_back(G);
        f = q;
        for (std::size_t i = s; i-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(idx[i]));
        found = true;
        break;
      }
    } while (next_combination(idx, lifted.size()));
    if (!found) ++s;
  }
  if (deg(f) >= 1) out.push_back(primitive(f));
  return out;
}

}  // namespace toral::detail
