#include <random>

#include "doctest.h"
#include "json.hpp"
#include "pkh/corpus.hpp"
#include "pkh/invariants.hpp"

using namespace pkh;

namespace {

LaurentPoly A(long c, int e) { return LaurentPoly::monomial('A', c, e); }
LaurentPoly q(long c, int e) { return LaurentPoly::monomial('q', c, e); }

std::vector<LinkDiagram> samples() {
  std::vector<LinkDiagram> out;
  for (const auto& f : corpus_files(std::string(PKH_SOURCE_DIR) + "/corpus")) out.push_back(load_pd_file(f));
  out.push_back(braid_closure(3, {1, -2, 1, 1, -2}));
  out.push_back(braid_closure(2, {1, 1, 1, 1, 1}));
  return out;
}

}  // namespace

TEST_CASE("bracket examples") {
  CHECK(bracket_skein_oracle(parse_pd("O(1)")) == circle_value());
  CHECK(bracket_skein_oracle(parse_pd("O(1) O(2)")) == circle_value() * circle_value());
  // positive kink: <kink> = -A^3 <unknot>
  const LaurentPoly kink = bracket_skein_oracle(parse_pd("X(1,1,2,2)+"));
  CHECK(kink == A(-1, 3) * circle_value());
  CHECK(kink == A(1, 5) + A(1, 1));
}

TEST_CASE("Jones examples") {
  CHECK(jones_skein_oracle(parse_pd("O(1)")) == q(1, 1) + q(1, -1));
  CHECK(jones_skein_oracle(parse_pd("X(1,1,2,2)+")) == q(1, 1) + q(1, -1));
  CHECK(jones_skein_oracle(parse_pd("X(4,2,5,1)+ X(8,6,1,5)+ X(6,3,7,4)- X(2,7,3,8)-")) == q(1, 5) + q(1, -5));
  CHECK(jones_skein_oracle(parse_pd("X(1,3,2,4)+ X(3,1,4,2)+")) == q(1, 6) + q(1, 4) + q(1, 2) + q(1, 0));
}

TEST_CASE("skein relation at every crossing") {
  for (const auto& d : samples()) {
    const LaurentPoly whole = bracket_skein_oracle(d);
    for (int c = 0; c < d.num_crossings(); ++c) {
      const LaurentPoly a = bracket_skein_oracle(smooth(d, c, +1));
      const LaurentPoly b = bracket_skein_oracle(smooth(d, c, -1));
      CHECK(whole == A(1, 1) * a + A(1, -1) * b);
    }
  }
}

TEST_CASE("three routes to the bracket and the Jones polynomial agree") {
  for (const auto& d : samples()) {
    const InvariantReport r = invariant_report(d);
    CHECK(r.jones_agree);
    CHECK(r.bracket_agree);
    CHECK(r.jones_from_chain == r.jones_from_skein);
    CHECK(r.jones_chain_level == r.jones_from_skein);
    CHECK(r.bracket_from_states == r.bracket_from_skein);
    CHECK(bracket_from_homology(build_complex(d, GradingScheme::Bracket)) == r.bracket_from_skein);
    CHECK(normalize_bracket(r.bracket_from_skein, d.writhe()) == r.jones_from_skein);
  }
}

TEST_CASE("mirror image inverts the variable") {
  for (const auto& d : samples()) {
    const LinkDiagram m = mirror(d);
    CHECK(bracket_skein_oracle(m) == bracket_skein_oracle(d).reversed());
    CHECK(jones_skein_oracle(m) == jones_skein_oracle(d).reversed());
  }
}

TEST_CASE("invariant report JSON") {
  auto j = nlohmann::json::parse(invariant_report_json(invariant_report(parse_pd("O(1)"))));
  CHECK(j["schema_version"] == 1);
  auto pairs = nlohmann::json::parse(laurent_json(q(1, 1) + q(1, -1)));
  CHECK(pairs == nlohmann::json::parse("[[1,1],[-1,1]]"));
}
