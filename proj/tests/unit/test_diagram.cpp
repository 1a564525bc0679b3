#include <random>

#include "doctest.h"
#include "pkh/diagram.hpp"

using namespace pkh;

namespace {

const char* kTrefoil = "X(1,4,2,5)- X(3,6,4,1)- X(5,2,6,3)-";
const char* kFigureEight = "X(4,2,5,1)+ X(8,6,1,5)+ X(6,3,7,4)- X(2,7,3,8)-";

std::vector<LinkDiagram> samples() {
  return {parse_pd("O(1)"),         parse_pd("X(1,1,2,2)+"),          parse_pd(kTrefoil),
          parse_pd(kFigureEight),   parse_pd("X(1,3,2,4)+ X(3,1,4,2)+"), braid_closure(3, {-1, -2, -1}),
          braid_closure(3, {1, -2, 1, -2})};
}

}  // namespace

TEST_CASE("parsing the documented examples") {
  LinkDiagram kink = parse_pd("X(1,2,2,1)+");
  CHECK(kink.num_crossings() == 1);
  CHECK(kink.num_edges() == 2);
  CHECK(kink.writhe() == 1);

  LinkDiagram t = parse_pd(kTrefoil);
  CHECK(t.num_crossings() == 3);
  CHECK(t.num_edges() == 6);
  CHECK(t.writhe() == -3);
  CHECK(t.components() == 1);

  CHECK_THROWS_AS(parse_pd("X(1,2,3)"), ParseError);
  CHECK_THROWS_AS(parse_pd("X(1,2,3,4)"), ParseError);      // missing sign
  CHECK_THROWS_AS(parse_pd("X(1,2,3,4)+"), ValidationError);  // edges occur once
  CHECK_THROWS_AS(parse_pd("X(1,1,1,1)+"), ValidationError);
}

TEST_CASE("comments and loops") {
  LinkDiagram d = parse_pd("# two unknotted circles\nO(1) O(7)\n");
  CHECK(d.num_crossings() == 0);
  CHECK(d.components() == 2);
  CHECK(render_pd(d) == "O(1) O(7)");
}

TEST_CASE("writhe examples") {
  CHECK(writhe(parse_pd("O(1)")) == 0);
  CHECK(writhe(braid_closure(2, {1, 1, 1})) == 3);
  CHECK(writhe(parse_pd("X(2,4,3,3)+ X(1,4,2,1)-")) == 0);
}

TEST_CASE("the sign validator cross-checks annotations against orientation") {
  // slots 0 and 3 of a positive crossing are both incoming, so edge 1 of
  // X(1,2,2,1)+ would have two heads; the consistent positive kink is
  // X(1,1,2,2)+
  CHECK_FALSE(parse_pd("X(1,2,2,1)+").orientation_consistent());
  CHECK(parse_pd("X(1,2,2,1)-").orientation_consistent());
  CHECK(parse_pd("X(1,1,2,2)+").orientation_consistent());
  LinkDiagram bad = parse_pd("X(1,4,2,5)- X(3,6,4,1)+ X(5,2,6,3)-");
  CHECK_FALSE(bad.orientation_consistent());
  CHECK_FALSE(bad.inconsistent_edges().empty());
  for (const auto& d : samples()) CHECK(d.orientation_consistent());
}

TEST_CASE("render and parse round-trip") {
  for (const auto& d : samples()) CHECK(parse_pd(render_pd(d)) == d);
}

TEST_CASE("planar faces: V - E + F = 2 per connected piece") {
  for (const auto& d : samples()) {
    if (d.num_crossings() == 0) continue;
    CHECK(static_cast<int>(d.faces().size()) == d.num_crossings() + 2);
  }
}

TEST_CASE("smoothing and mirroring") {
  LinkDiagram t = parse_pd(kTrefoil);
  LinkDiagram m = mirror(t);
  CHECK(m.writhe() == 3);
  CHECK(m.orientation_consistent());
  CHECK(mirror(m) == t);
  LinkDiagram s = smooth(t, 0, +1);
  CHECK(s.num_crossings() == 2);
}

TEST_CASE("R1 insertion: one positive crossing, writhe +1, and removal inverts it") {
  for (const auto& d : samples()) {
    for (int side : {0, 1}) {
      MoveRequest r;
      r.kind = MoveKind::R1Left;
      r.edge = d.edge_labels().front();
      r.side = side;
      auto [out, site] = apply_move(d, r);
      CHECK(out.num_crossings() == d.num_crossings() + 1);
      CHECK(out.writhe() == d.writhe() + 1);
      CHECK(out.orientation_consistent());
      CHECK(site.crossing_ids == std::vector<int>{d.num_crossings()});
      CHECK(isomorphic(remove_r1(out, site.crossing_ids[0]), d));
    }
  }
}

TEST_CASE("R2 insertion: two crossings of opposite sign, and removal inverts it") {
  for (const auto& d : samples()) {
    for (int side : {0, 1})
      for (bool over : {true, false}) {
        MoveRequest r;
        r.kind = MoveKind::R2;
        r.edge = d.edge_labels().front();
        r.side = side;
        r.first_over = over;
        auto [out, site] = apply_move(d, r);
        CHECK(out.num_crossings() == d.num_crossings() + 2);
        CHECK(out.writhe() == d.writhe());
        CHECK(out.orientation_consistent());
        CHECK(out.crossing(site.crossing_ids[0]).sign == -out.crossing(site.crossing_ids[1]).sign);
        CHECK(isomorphic(remove_r2(out, site.crossing_ids[0], site.crossing_ids[1]), d));
      }
  }
}

TEST_CASE("R2 between distinct edges needs a shared face") {
  LinkDiagram t = parse_pd(kTrefoil);
  MoveRequest r;
  r.kind = MoveKind::R2;
  r.edge = 1;
  r.edge2 = 2;
  CHECK_THROWS_AS(apply_move(t, r), SiteNotFound);
  r.edge2 = 5;
  auto [out, site] = apply_move(t, r);
  CHECK(out.num_crossings() == 5);
  CHECK(isomorphic(remove_r2(out, site.crossing_ids[0], site.crossing_ids[1]), t));
}

TEST_CASE("R3 keeps crossings and writhe, and applying it twice is the identity") {
  LinkDiagram d = braid_closure(3, {-1, -2, -1});
  auto sites = find_r3_sites(d);
  REQUIRE(sites.size() == 1);
  MoveRequest r;
  r.kind = MoveKind::R3;
  auto [out, site] = apply_move(d, r);
  CHECK(out.num_crossings() == d.num_crossings());
  CHECK(out.writhe() == d.writhe());
  CHECK_FALSE(out == d);
  auto [back, site2] = apply_move(out, r);
  CHECK(isomorphic(back, d));
}

TEST_CASE("mirrored R3 triangles and non-sites are rejected") {
  LinkDiagram d = braid_closure(3, {1, 2, 1});
  CHECK(find_r3_sites(d).empty());
  MoveRequest r;
  r.kind = MoveKind::R3;
  CHECK_THROWS_AS(apply_move(d, r), SiteNotFound);
  LinkDiagram t = parse_pd(kTrefoil);
  CHECK_THROWS_AS(r3_site(t, {0, 1, 2}), Error);
}

TEST_CASE("isomorphism ignores labels but not signs") {
  LinkDiagram a = parse_pd(kTrefoil);
  LinkDiagram b = parse_pd("X(11,14,12,15)- X(13,16,14,11)- X(15,12,16,13)-");
  CHECK(isomorphic(a, b));
  CHECK_FALSE(isomorphic(a, mirror(a)));
}
