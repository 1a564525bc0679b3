#pragma once

#include <string>

#include "pkh/complex.hpp"
#include "pkh/diagram.hpp"
#include "pkh/homology.hpp"
#include "pkh/ring.hpp"

namespace pkh {

/// <D> by the skein recursion <D> = A<D_0> + A^-1<D_inf>, each crossingless
/// circle contributing -A^2 - A^-2. Memoized on the canonical render of the
/// partially smoothed diagram.
LaurentPoly bracket_skein_oracle(const LinkDiagram& d);

/// <D> as the sum over all states of A^sigma (-A^2 - A^-2)^|s|.
LaurentPoly bracket_state_sum(const LinkDiagram& d);

/// (-A)^(-3w) <D> rewritten in q = -A^-2, from the skein oracle.
LaurentPoly jones_skein_oracle(const LinkDiagram& d);

/// sum (-1)^i q^j rank H^{i,j} at (s,t) = (0,0). Requires the Jones scheme.
LaurentPoly jones_from_chain(const ChainComplex& c);
/// sum (-1)^i q^j dim C^{i,j}. Requires the Jones scheme.
LaurentPoly jones_chain_level(const ChainComplex& c);
/// sum (-1)^((2I - J)/2) A^J rank H_{I,J} at (0,0). Requires the bracket
/// scheme.
LaurentPoly bracket_from_homology(const ChainComplex& c);

/// Multiplies by (-A)^(-3w) and substitutes A^2 = -q^-1.
LaurentPoly normalize_bracket(const LaurentPoly& bracket, int writhe);

struct InvariantReport {
  LaurentPoly jones_from_chain{'q'};
  LaurentPoly jones_chain_level{'q'};
  LaurentPoly jones_from_skein{'q'};
  LaurentPoly bracket_from_states{'A'};
  LaurentPoly bracket_from_skein{'A'};
  bool jones_agree = false;
  bool bracket_agree = false;
};

InvariantReport invariant_report(const LinkDiagram& d);
std::string invariant_report_json(const InvariantReport& r);

/// JSON list of [exponent, coefficient] pairs, exponents descending.
std::string laurent_json(const LaurentPoly& p);

}  // namespace pkh
