#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pkh/errors.hpp"

namespace pkh {

using Integer = mpz_class;
using Rational = mpq_class;

/// Element of Z[s,t]. Terms are kept sorted by (deg_s, deg_t) with no zero
/// coefficients, so structural equality is polynomial equality.
class PolyST {
 public:
  struct Term {
    int deg_s = 0;
    int deg_t = 0;
    Integer coeff;
  };

  PolyST() = default;
  PolyST(long c);  // NOLINT(google-explicit-constructor): constants read naturally
  explicit PolyST(const Integer& c);

  static PolyST monomial(const Integer& c, int deg_s, int deg_t);
  static PolyST s() { return monomial(1, 1, 0); }
  static PolyST t() { return monomial(1, 0, 1); }

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

  PolyST& operator+=(const PolyST& o);
  PolyST& operator-=(const PolyST& o);
  PolyST& operator*=(const PolyST& o);
  friend PolyST operator+(PolyST a, const PolyST& b) { return a += b; }
  friend PolyST operator-(PolyST a, const PolyST& b) { return a -= b; }
  friend PolyST operator*(const PolyST& a, const PolyST& b);
  PolyST operator-() const;
  friend bool operator==(const PolyST& a, const PolyST& b);

  Integer specialize(const Integer& s_val, const Integer& t_val) const;

  /// Renders as e.g. `s^2 - 3*s*t + 1`; zero renders as `0`.
  std::string to_string() const;

 private:
  void add_term(const Integer& c, int ds, int dt);
  std::vector<Term> terms_;
};

PolyST poly_mul(const PolyST& a, const PolyST& b);
Integer specialize(const PolyST& p, const Integer& s_val, const Integer& t_val);

/// Laurent polynomial in a single named variable (q or A).
class LaurentPoly {
 public:
  explicit LaurentPoly(char var = 'q') : var_(var) {}
  static LaurentPoly monomial(char var, const Integer& c, int exp);

  char variable() const { return var_; }
  const std::map<int, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer coeff(int exp) const;

  void add_term(const Integer& c, int exp);
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.var_ == b.var_ && a.terms_ == b.terms_;
  }

  LaurentPoly pow(unsigned n) const;
  /// x -> x^-1.
  LaurentPoly reversed() const;
  Rational eval(const Rational& x) const;

  /// `-A^2 - A^-2`, exponents descending.
  std::string to_string() const;
  /// [[exp, coeff], ...] with exponents descending.
  std::vector<std::pair<int, Integer>> to_pairs() const;

 private:
  void check_var(const LaurentPoly& o) const;
  char var_;
  std::map<int, Integer> terms_;
};

/// Rewrites a polynomial in A as one in q via A^2 = -q^-1.
/// Throws OddExponent when an odd power of A is present.
LaurentPoly laurent_substitute_q_for_A(const LaurentPoly& p);

/// -A^2 - A^-2, the value of a single circle.
LaurentPoly circle_value();

}  // namespace pkh
