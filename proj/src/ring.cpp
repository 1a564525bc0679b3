#include "pkh/ring.hpp"

#include <algorithm>
#include <sstream>

namespace pkh {

namespace {

bool term_less(const PolyST::Term& a, int ds, int dt) {
  return a.deg_s < ds || (a.deg_s == ds && a.deg_t < dt);
}

std::string power(char var, int exp) {
  std::string out(1, var);
  if (exp != 1) out += "^" + std::to_string(exp);
  return out;
}

}  // namespace

PolyST::PolyST(long c) {
  if (c != 0) terms_.push_back({0, 0, Integer(c)});
}

PolyST::PolyST(const Integer& c) {
  if (c != 0) terms_.push_back({0, 0, c});
}

PolyST PolyST::monomial(const Integer& c, int deg_s, int deg_t) {
  if (deg_s < 0 || deg_t < 0) throw Error("PolyST: negative exponent");
  PolyST p;
  if (c != 0) p.terms_.push_back({deg_s, deg_t, c});
  return p;
}

void PolyST::add_term(const Integer& c, int ds, int dt) {
  if (c == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), 0,
                             [&](const Term& a, int) { return term_less(a, ds, dt); });
  if (it != terms_.end() && it->deg_s == ds && it->deg_t == dt) {
    it->coeff += c;
    if (it->coeff == 0) terms_.erase(it);
  } else {
    terms_.insert(it, Term{ds, dt, c});
  }
}

PolyST& PolyST::operator+=(const PolyST& o) {
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  // merge of two sorted term lists
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && term_less(*a, b->deg_s, b->deg_t))) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || term_less(*b, a->deg_s, a->deg_t)) {
      out.push_back(*b++);
    } else {
      Integer c = a->coeff + b->coeff;
      if (c != 0) out.push_back({a->deg_s, a->deg_t, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

PolyST& PolyST::operator-=(const PolyST& o) { return *this += -o; }

PolyST PolyST::operator-() const {
  PolyST r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

PolyST operator*(const PolyST& a, const PolyST& b) {
  PolyST r;
  if (a.is_zero() || b.is_zero()) return r;
  if (a.terms_.size() == 1 && a.terms_[0].deg_s == 0 && a.terms_[0].deg_t == 0) {
    r = b;
    for (auto& t : r.terms_) t.coeff *= a.terms_[0].coeff;
    return r;
  }
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) r.add_term(x.coeff * y.coeff, x.deg_s + y.deg_s, x.deg_t + y.deg_t);
  return r;
}

PolyST& PolyST::operator*=(const PolyST& o) { return *this = *this * o; }

bool operator==(const PolyST& a, const PolyST& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (x.deg_s != y.deg_s || x.deg_t != y.deg_t || x.coeff != y.coeff) return false;
  }
  return true;
}

Integer PolyST::specialize(const Integer& s_val, const Integer& t_val) const {
  Integer total = 0;
  for (const auto& term : terms_) {
    Integer v = term.coeff;
    Integer ps, pt;
    mpz_pow_ui(ps.get_mpz_t(), s_val.get_mpz_t(), static_cast<unsigned long>(term.deg_s));
    mpz_pow_ui(pt.get_mpz_t(), t_val.get_mpz_t(), static_cast<unsigned long>(term.deg_t));
    total += v * ps * pt;
  }
  return total;
}

std::string PolyST::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest total degree first reads more naturally
  std::vector<Term> sorted = terms_;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Term& a, const Term& b) {
    int da = a.deg_s + a.deg_t, db = b.deg_s + b.deg_t;
    if (da != db) return da > db;
    return a.deg_s > b.deg_s;
  });
  for (const auto& t : sorted) {
    Integer c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool constant = t.deg_s == 0 && t.deg_t == 0;
    std::string mono;
    if (t.deg_s > 0) mono += power('s', t.deg_s);
    if (t.deg_t > 0) mono += (mono.empty() ? "" : "*") + power('t', t.deg_t);
    if (constant) {
      os << c.get_str();
    } else if (c == 1) {
      os << mono;
    } else {
      os << c.get_str() << "*" << mono;
    }
  }
  return os.str();
}

PolyST poly_mul(const PolyST& a, const PolyST& b) { return a * b; }

Integer specialize(const PolyST& p, const Integer& s_val, const Integer& t_val) {
  return p.specialize(s_val, t_val);
}

// ---------------------------------------------------------------------------

LaurentPoly LaurentPoly::monomial(char var, const Integer& c, int exp) {
  LaurentPoly p(var);
  p.add_term(c, exp);
  return p;
}

Integer LaurentPoly::coeff(int exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Integer(0) : it->second;
}

void LaurentPoly::add_term(const Integer& c, int exp) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exp, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void LaurentPoly::check_var(const LaurentPoly& o) const {
  if (o.var_ != var_ && !o.is_zero() && !is_zero())
    throw Error(std::string("LaurentPoly: mixing variables ") + var_ + " and " + o.var_);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_var(o);
  if (is_zero()) var_ = o.var_;
  for (const auto& [e, c] : o.terms_) add_term(c, e);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  check_var(o);
  if (is_zero()) var_ = o.var_;
  for (const auto& [e, c] : o.terms_) add_term(-c, e);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_var(b);
  LaurentPoly r(a.var_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ca * cb, ea + eb);
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly r = monomial(var_, 1, 0);
  for (unsigned i = 0; i < n; ++i) r = r * *this;
  return r;
}

LaurentPoly LaurentPoly::reversed() const {
  LaurentPoly r(var_);
  for (const auto& [e, c] : terms_) r.add_term(c, -e);
  return r;
}

Rational LaurentPoly::eval(const Rational& x) const {
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    if (e < 0 && x == 0) throw Error("LaurentPoly::eval: negative power of zero");
    Rational base = e < 0 ? Rational(1) / x : x;
    Rational p = 1;
    for (int i = 0; i < (e < 0 ? -e : e); ++i) p *= base;
    total += Rational(c) * p;
  }
  total.canonicalize();
  return total;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Integer c = it->second;
    int e = it->first;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << power(var_, e);
    }
  }
  return os.str();
}

std::vector<std::pair<int, Integer>> LaurentPoly::to_pairs() const {
  std::vector<std::pair<int, Integer>> out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) out.emplace_back(it->first, it->second);
  return out;
}

LaurentPoly laurent_substitute_q_for_A(const LaurentPoly& p) {
  if (p.variable() != 'A' && !p.is_zero()) throw Error("laurent_substitute_q_for_A: input is not in A");
  LaurentPoly q('q');
  for (const auto& [e, c] : p.terms()) {
    if (e % 2 != 0) throw OddExponent("odd power A^" + std::to_string(e) + " has no expression in q");
    int k = e / 2;  // A^(2k) = (-q^-1)^k
    q.add_term(k % 2 == 0 ? c : Integer(-c), -k);
  }
  return q;
}

LaurentPoly circle_value() {
  LaurentPoly d('A');
  d.add_term(-1, 2);
  d.add_term(-1, -2);
  return d;
}

}  // namespace pkh
