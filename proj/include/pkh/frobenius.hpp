#pragma once

#include <array>
#include <string>

#include "pkh/ring.hpp"

namespace pkh {

/// Circle sign. Minus is the unit of the algebra, plus is X with
/// X^2 = sX + t.
enum class Sign : int { Minus = 0, Plus = 1 };

inline Sign sign_of_bit(unsigned bit) { return bit ? Sign::Plus : Sign::Minus; }
inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

/// Formal combination of one signed circle.
struct SignSum {
  std::array<PolyST, 2> coeff;  // indexed by Sign
  const PolyST& operator[](Sign s) const { return coeff[static_cast<size_t>(s)]; }
  PolyST& operator[](Sign s) { return coeff[static_cast<size_t>(s)]; }
  friend bool operator==(const SignSum& a, const SignSum& b) { return a.coeff == b.coeff; }
};

/// Formal combination of an ordered pair of signed circles.
struct SignPairSum {
  std::array<std::array<PolyST, 2>, 2> coeff;  // [first][second]
  const PolyST& at(Sign first, Sign second) const {
    return coeff[static_cast<size_t>(first)][static_cast<size_t>(second)];
  }
  PolyST& at(Sign first, Sign second) { return coeff[static_cast<size_t>(first)][static_cast<size_t>(second)]; }
  friend bool operator==(const SignPairSum& a, const SignPairSum& b) { return a.coeff == b.coeff; }
};

/// m(p : q), the sign of the merged circle.
const SignSum& merge(Sign p, Sign q);
/// Delta(p), the signs of the two circles produced by a split.
const SignPairSum& split(Sign p);
/// Part of split(p) whose second circle carries `fixed_second`, as a sum
/// over the first circle's sign.
SignSum split_secondary_sign(Sign p, Sign fixed_second);

/// The rule table as JSON text (for documentation and diffing).
std::string frobenius_table_json();

}  // namespace pkh
