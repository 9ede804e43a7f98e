#include "toral/upoly.hpp"

#include <algorithm>

#include "toral/errors.hpp"

namespace toral {

UPoly::UPoly(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly::UPoly(const GaussianRational& c) {
  if (!c.is_zero()) c_.push_back(c);
}

UPoly UPoly::x() { return UPoly(std::vector<GaussianRational>{GaussianRational(0), GaussianRational(1)}); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussianRational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(r));
}

UPoly operator*(UPoly a, const GaussianRational& s) {
  for (auto& c : a.c_) c *= s;
  a.trim();
  return a;
}

GaussianRational UPoly::eval(const GaussianRational& x) const {
  GaussianRational acc;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<GaussianRational> r(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * GaussianRational(static_cast<long>(k));
  return UPoly(std::move(r));
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  return *this * lc().inverse();
}

UPoly UPoly::reflect() const {
  std::vector<GaussianRational> r(c_.rbegin(), c_.rend());
  for (auto& c : r) c = c.conj();
  return UPoly(std::move(r));
}

UPoly UPoly::conj() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = c.conj();
  return r;
}

UPoly UPoly::shift(const GaussianRational& s) const {
  if (s.is_zero()) return *this;
  UPoly lin(std::vector<GaussianRational>{s, GaussianRational(1)});
  UPoly acc;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * lin + UPoly(c_[k]);
  return acc;
}

int UPoly::low_order() const {
  int k = 0;
  while (k < static_cast<int>(c_.size()) && c_[k].is_zero()) ++k;
  return k;
}

UPoly UPoly::divide_by_x_power(int k) const {
  if (k <= 0) return *this;
  if (k > low_order()) throw DomainError("x^k does not divide the polynomial");
  return UPoly(std::vector<GaussianRational>(c_.begin() + k, c_.end()));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  std::vector<GaussianRational> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<GaussianRational> q(a.degree() - db + 1);
  GaussianRational inv = b.lc().inverse();
  const auto& bc = b.coeffs();
  for (int k = a.degree() - db; k >= 0; --k) {
    GaussianRational t = r[k + db] * inv;
    q[k] = t;
    if (t.is_zero()) continue;
    for (int j = 0; j <= db; ++j) r[k + j] -= t * bc[j];
  }
  r.resize(db);
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly exact_quotient(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw InternalError("univariate exact division left a remainder");
  return q;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a;
  UPoly y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

ExtendedGcd extended_gcd(const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b;
  UPoly s0(GaussianRational(1)), s1;
  UPoly t0, t1(GaussianRational(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UPoly s = s0 - q * s1;
    UPoly t = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.is_zero()) return {UPoly(), UPoly(), UPoly()};
  GaussianRational inv = r0.lc().inverse();
  return {r0 * inv, s0 * inv, t0 * inv};
}

UPoly squarefree_part(const UPoly& f) {
  if (f.degree() <= 0) return f.monic();
  UPoly g = gcd(f, f.derivative());
  return exact_quotient(f, g).monic();
}

UPoly pow(const UPoly& f, unsigned e) {
  UPoly result(GaussianRational(1));
  UPoly base = f;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

UPoly to_univariate(const MultiPoly& p, std::size_t k) {
  std::vector<GaussianRational> c(std::max(p.degree_in(k), 0) + 1);
  for (const auto& [e, v] : p.terms()) {
    for (std::size_t j = 0; j < e.size(); ++j)
      if (j != k && e[j] != 0) throw DomainError("polynomial depends on more than one variable");
    c[e[k]] = v;
  }
  return UPoly(std::move(c));
}

MultiPoly from_univariate(const UPoly& u, std::size_t nvars, std::size_t k) {
  MultiPoly p(nvars);
  Exponent e(nvars, 0);
  for (std::size_t j = 0; j < u.coeffs().size(); ++j) {
    e[k] = static_cast<int>(j);
    p.add_term(e, u.coeffs()[j]);
  }
  return p;
}

}  // namespace toral
