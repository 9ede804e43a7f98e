#include "toral/multipoly.hpp"

#include <algorithm>
#include <numeric>

#include "toral/errors.hpp"

namespace toral {

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GrlexGreater::operator()(const Exponent& a, const Exponent& b) const {
  int da = total_degree(a);
  int db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::string variable_name(std::size_t k) { return "z" + std::to_string(k + 1); }

MultiPoly::MultiPoly(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0) throw DomainError("polynomial needs at least one variable");
}

MultiPoly::MultiPoly(std::size_t nvars, const GaussianRational& c) : MultiPoly(nvars) {
  if (!c.is_zero()) terms_.emplace(Exponent(nvars, 0), c);
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t k) {
  if (k >= nvars) throw DomainError("variable index out of range");
  Exponent e(nvars, 0);
  e[k] = 1;
  return monomial(std::move(e), GaussianRational(1));
}

MultiPoly MultiPoly::monomial(Exponent e, const GaussianRational& c) {
  MultiPoly p(e.size());
  if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && ::toral::total_degree(terms_.begin()->first) == 0);
}

GaussianRational MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? GaussianRational() : it->second;
}

void MultiPoly::add_term(const Exponent& e, const GaussianRational& c) {
  if (e.size() != nvars_) throw DomainError("exponent length does not match variable count");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

const Exponent& MultiPoly::leading_exponent() const {
  if (is_zero()) throw DomainError("zero polynomial has no leading term");
  return terms_.begin()->first;
}

const GaussianRational& MultiPoly::leading_coefficient() const {
  if (is_zero()) throw DomainError("zero polynomial has no leading term");
  return terms_.begin()->second;
}

GaussianRational MultiPoly::constant_term() const { return coefficient(Exponent(nvars_, 0)); }

Exponent MultiPoly::multidegree() const {
  if (is_zero()) throw DomainError("multidegree of the zero polynomial");
  Exponent d(nvars_, 0);
  for (const auto& [e, c] : terms_)
    for (std::size_t k = 0; k < nvars_; ++k) d[k] = std::max(d[k], e[k]);
  return d;
}

int MultiPoly::total_degree() const {
  if (is_zero()) return -1;
  return toral::total_degree(leading_exponent());
}

int MultiPoly::degree_in(std::size_t k) const {
  if (is_zero()) return -1;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(k));
  return d;
}

bool MultiPoly::depends_on(std::size_t k) const { return degree_in(k) > 0; }

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.nvars_ != nvars_) throw DomainError("variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.nvars_ != nvars_) throw DomainError("variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) throw DomainError("variable count mismatch");
  MultiPoly r(a.nvars_);
  Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

namespace {

std::string monomial_string(const Exponent& e) {
  std::string out;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!out.empty()) out += '*';
    out += variable_name(k);
    if (e[k] > 1) out += '^' + std::to_string(e[k]);
  }
  return out;
}

bool negative_sign(const GaussianRational& c) {
  if (c.is_real()) return sgn(c.re()) < 0;
  return sgn(c.re()) == 0 && sgn(c.im()) < 0;
}

}  // namespace

std::string MultiPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c0] : terms_) {
    bool neg = negative_sign(c0);
    GaussianRational c = neg ? -c0 : c0;
    std::string mono = monomial_string(e);
    std::string coef;
    if (c.is_real() || sgn(c.re()) == 0) {
      coef = c.to_string();
    } else {
      coef = "(" + c.to_string() + ")";
    }
    std::string term;
    if (mono.empty()) {
      term = coef;
    } else if (c.is_one()) {
      term = mono;
    } else {
      term = coef + "*" + mono;
    }
    if (first) {
      out = neg ? "-" + term : term;
      first = false;
    } else {
      out += neg ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

MultiPoly pow(const MultiPoly& p, unsigned e) {
  MultiPoly result(p.nvars(), GaussianRational(1));
  MultiPoly base = p;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

MultiPoly derivative(const MultiPoly& p, std::size_t k) {
  if (k >= p.nvars()) throw DomainError("derivative variable out of range");
  MultiPoly r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[k] == 0) continue;
    Exponent f = e;
    f[k] -= 1;
    r.add_term(f, c * GaussianRational(e[k]));
  }
  return r;
}

std::pair<MultiPoly, MultiPoly> divide_with_remainder(const MultiPoly& p, const MultiPoly& q) {
  if (q.is_zero()) throw DomainError("division by the zero polynomial");
  if (p.nvars() != q.nvars()) throw DomainError("variable count mismatch");
  const Exponent& lq = q.leading_exponent();
  GaussianRational lc_inv = q.leading_coefficient().inverse();
  MultiPoly quotient(p.nvars());
  MultiPoly remainder(p.nvars());
  MultiPoly h = p;
  Exponent shift(p.nvars());
  while (!h.is_zero()) {
    const Exponent& lh = h.leading_exponent();
    bool divisible = true;
    for (std::size_t k = 0; k < lh.size(); ++k) {
      shift[k] = lh[k] - lq[k];
      if (shift[k] < 0) divisible = false;
    }
    GaussianRational lc = h.leading_coefficient();
    if (divisible) {
      GaussianRational t = lc * lc_inv;
      quotient.add_term(shift, t);
      h -= multiply_monomial(q, shift) * t;
    } else {
      remainder.add_term(lh, lc);
      h.add_term(Exponent(lh), -lc);
    }
  }
  return {std::move(quotient), std::move(remainder)};
}

MultiPoly exact_divide(const MultiPoly& p, const MultiPoly& q) {
  auto [quotient, remainder] = divide_with_remainder(p, q);
  if (!remainder.is_zero())
    throw NotDivisibleError(q.to_string() + " does not divide " + p.to_string(), remainder.to_string());
  return quotient;
}

bool divides(const MultiPoly& q, const MultiPoly& p) { return divide_with_remainder(p, q).second.is_zero(); }

MultiPoly multiply_monomial(const MultiPoly& p, const Exponent& e) {
  MultiPoly r(p.nvars());
  Exponent f(p.nvars());
  for (const auto& [g, c] : p.terms()) {
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = g[k] + e[k];
    r.add_term(f, c);
  }
  return r;
}

MultiPoly reflect(const MultiPoly& p) {
  Exponent d = p.multidegree();
  MultiPoly r(p.nvars());
  Exponent f(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = d[k] - e[k];
    r.add_term(f, c.conj());
  }
  return r;
}

SymmetryResult essential_symmetry(const MultiPoly& p) {
  MultiPoly r = reflect(p);
  SymmetryResult out;
  const Exponent& lead = p.leading_exponent();
  GaussianRational r_lead = r.coefficient(lead);
  if (r_lead.is_zero()) {
    out.mismatch = {lead};
    return out;
  }
  GaussianRational tau = r_lead / p.leading_coefficient();
  for (const auto& [e, c] : p.terms()) {
    GaussianRational rc = r.coefficient(e);
    if (rc.is_zero()) {
      out.mismatch = {e};
      return out;
    }
    if (rc != tau * c) {
      out.mismatch = {lead, e};
      return out;
    }
  }
  for (const auto& [e, c] : r.terms()) {
    if (p.coefficient(e).is_zero()) {
      out.mismatch = {e};
      return out;
    }
  }
  if (!tau.is_unimodular()) return out;
  out.symmetric = true;
  out.tau = tau;
  return out;
}

std::pair<GaussianRational, MultiPoly> normalize(const MultiPoly& p) {
  if (p.is_zero()) return {GaussianRational(0), p};
  GaussianRational lc = p.leading_coefficient();
  return {lc, p * lc.inverse()};
}

MultiPoly monic(const MultiPoly& p) { return normalize(p).second; }

GaussianRational evaluate(const MultiPoly& p, const std::vector<GaussianRational>& point) {
  if (point.size() != p.nvars()) throw DomainError("point dimension mismatch");
  std::vector<std::vector<GaussianRational>> powers(p.nvars());
  Exponent d = p.is_zero() ? Exponent(p.nvars(), 0) : p.multidegree();
  for (std::size_t k = 0; k < p.nvars(); ++k) {
    powers[k].push_back(GaussianRational(1));
    for (int j = 1; j <= d[k]; ++j) powers[k].push_back(powers[k].back() * point[k]);
  }
  GaussianRational sum;
  for (const auto& [e, c] : p.terms()) {
    GaussianRational t = c;
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k]) t *= powers[k][e[k]];
    sum += t;
  }
  return sum;
}

MultiPoly substitute(const MultiPoly& p, std::size_t k, const GaussianRational& value) {
  if (k >= p.nvars()) throw DomainError("variable index out of range");
  MultiPoly r(p.nvars());
  int deg = std::max(p.degree_in(k), 0);
  std::vector<GaussianRational> powers{GaussianRational(1)};
  for (int j = 1; j <= deg; ++j) powers.push_back(powers.back() * value);
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    f[k] = 0;
    r.add_term(f, c * powers[e[k]]);
  }
  return r;
}

MultiPoly shift_variable(const MultiPoly& p, std::size_t k, const GaussianRational& shift) {
  if (shift.is_zero()) return p;
  MultiPoly lin = MultiPoly::variable(p.nvars(), k) + MultiPoly(p.nvars(), shift);
  auto coeffs = coefficients_in(p, k);
  MultiPoly r(p.nvars());
  for (std::size_t j = coeffs.size(); j-- > 0;) r = r * lin + coeffs[j];
  return r;
}

std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t k) {
  int deg = std::max(p.degree_in(k), 0);
  std::vector<MultiPoly> out(deg + 1, MultiPoly(p.nvars()));
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    f[k] = 0;
    out[e[k]].add_term(f, c);
  }
  return out;
}

bool canonical_less(const MultiPoly& a, const MultiPoly& b) {
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  GrlexGreater greater;
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return greater(ia->first, ib->first);
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == a.terms().end() && ib != b.terms().end();
}

}  // namespace toral
