#include <set>

#include "doctest.h"
#include "pkh/invariants.hpp"
#include "pkh/state.hpp"

using namespace pkh;

namespace {

// Independent circle count: walk arcs. Leaving a crossing along slot j means
// travelling the edge to its other end; arriving at slot k, the marker sends
// us out through its partner slot.
int trace_circles(const LinkDiagram& d, MarkerMask m) {
  const auto& cs = d.crossings();
  auto partner = [&](int c, int k) {
    const bool pos = (m >> c) & 1U;
    static const int pos_pair[4] = {1, 0, 3, 2};
    static const int neg_pair[4] = {3, 2, 1, 0};
    return pos ? pos_pair[k] : neg_pair[k];
  };
  auto other_end = [&](int c, int k) {
    const int label = cs[static_cast<size_t>(c)].edges[static_cast<size_t>(k)];
    for (size_t c2 = 0; c2 < cs.size(); ++c2)
      for (int k2 = 0; k2 < 4; ++k2)
        if (cs[c2].edges[static_cast<size_t>(k2)] == label && !(static_cast<int>(c2) == c && k2 == k))
          return std::pair<int, int>{static_cast<int>(c2), k2};
    return std::pair<int, int>{-1, -1};
  };
  std::set<std::pair<int, int>> seen;
  int circles = static_cast<int>(d.loops().size());
  for (int c = 0; c < static_cast<int>(cs.size()); ++c)
    for (int k = 0; k < 4; ++k) {
      if (seen.count({c, k})) continue;
      ++circles;
      int cc = c, kk = k;
      while (!seen.count({cc, kk})) {
        seen.insert({cc, kk});
        auto [c2, k2] = other_end(cc, kk);
        seen.insert({c2, k2});
        cc = c2;
        kk = partner(c2, k2);
      }
    }
  return circles;
}

std::vector<LinkDiagram> samples() {
  return {parse_pd("O(1)"),
          parse_pd("X(1,1,2,2)+"),
          parse_pd("X(1,4,2,5)- X(3,6,4,1)- X(5,2,6,3)-"),
          parse_pd("X(4,2,5,1)+ X(8,6,1,5)+ X(6,3,7,4)- X(2,7,3,8)-"),
          parse_pd("X(1,3,2,4)+ X(3,1,4,2)+"),
          braid_closure(3, {1, -2, 1, -2, -1})};
}

}  // namespace

TEST_CASE("resolve agrees with an independent arc-tracing oracle") {
  for (const auto& d : samples()) {
    const int n = d.num_crossings();
    for (MarkerMask m = 0; m < (MarkerMask{1} << n); ++m) {
      CircleArrangement arr = resolve(d, m);
      CHECK(arr.circle_count == trace_circles(d, m));
      // every circle index is used
      std::set<int> used(arr.edge_to_circle.begin(), arr.edge_to_circle.end());
      CHECK(static_cast<int>(used.size()) == arr.circle_count);
    }
  }
}

TEST_CASE("resolve examples") {
  CHECK(resolve(parse_pd("O(1)"), State{}).circle_count == 1);
  LinkDiagram kink = parse_pd("X(1,1,2,2)+");
  CHECK(resolve(kink, State{{1}}).circle_count == 2);
  CHECK(resolve(kink, State{{-1}}).circle_count == 1);
  CHECK(resolve(kink, State{{1}}).circle_count == trace_circles(kink, 1));
  CHECK_THROWS_AS(resolve(kink, State{{1, 1}}), MarkerMismatch);
  CHECK_THROWS_AS(resolve(kink, State{{0}}), MarkerMismatch);
}

TEST_CASE("trefoil state sum reproduces the bracket oracle") {
  LinkDiagram t = parse_pd("X(1,4,2,5)- X(3,6,4,1)- X(5,2,6,3)-");
  CHECK(resolve(t, State{{-1, -1, -1}}).circle_count == trace_circles(t, 0));
  LaurentPoly sum('A');
  for (MarkerMask m = 0; m < 8; ++m) {
    const int pos = positive_marker_count(m, 3);
    sum += LaurentPoly::monomial('A', 1, 2 * pos - 3) * circle_value().pow(static_cast<unsigned>(trace_circles(t, m)));
  }
  CHECK(sum == bracket_skein_oracle(t));
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_enhanced(parse_pd("O(1)")).size() == 2);
  CHECK(enumerate_enhanced(parse_pd("X(1,1,2,2)+")).size() == 6);
  for (const auto& d : samples()) {
    size_t expected = 0;
    for (MarkerMask m = 0; m < (MarkerMask{1} << d.num_crossings()); ++m) expected += size_t{1} << trace_circles(d, m);
    auto all = enumerate_enhanced(d);
    CHECK(all.size() == expected);
    std::set<EnhancedState> unique(all.begin(), all.end());
    CHECK(unique.size() == all.size());
  }
}

TEST_CASE("grading examples and identities") {
  LinkDiagram u = parse_pd("O(1)");
  Gradings plus = gradings(u, {0, 1});
  CHECK(plus.sigma == 0);
  CHECK(plus.tau == -1);
  CHECK(plus.i == 0);
  CHECK(plus.j == -1);
  CHECK(plus.J == 2);
  Gradings minus = gradings(u, {0, 0});
  CHECK(minus.i == 0);
  CHECK(minus.j == 1);

  LinkDiagram t = parse_pd("X(1,4,2,5)- X(3,6,4,1)- X(5,2,6,3)-");
  Gradings g = gradings(t, {0b011, 0});
  CHECK(g.sigma == 1);
  CHECK(g.doubled_I == 1);

  for (const auto& d : samples()) {
    const int w = d.writhe();
    LaurentPoly euler('q'), bracket('A');
    for (const auto& s : enumerate_enhanced(d)) {
      Gradings gr = gradings(d, s);
      CHECK(gr.j - gr.i - gr.tau == w);
      CHECK(2 * gr.i + gr.sigma == w);
      CHECK(gr.J == gr.sigma - 2 * gr.tau);
      CHECK(gr.doubled_I == gr.sigma);
      euler.add_term(gr.i % 2 == 0 ? 1 : -1, gr.j);
      bracket.add_term(gr.tau % 2 == 0 ? 1 : -1, gr.sigma - 2 * gr.tau);
    }
    CHECK(euler == jones_skein_oracle(d));
    CHECK(bracket == bracket_skein_oracle(d));
  }
}

TEST_CASE("state rendering") {
  LinkDiagram t = parse_pd("X(1,4,2,5)- X(3,6,4,1)- X(5,2,6,3)-");
  CHECK(render_state(t, {0b101, 0b01}).rfind("markers:+-+ signs:", 0) == 0);
}
