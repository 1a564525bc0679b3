#include "doctest.h"
#include "json.hpp"
#include "pkh/reidemeister.hpp"

using namespace pkh;

namespace {

const char* kTrefoil = "X(1,4,2,5)- X(3,6,4,1)- X(5,2,6,3)-";

MoveRequest r1(int edge, int side) {
  MoveRequest r;
  r.kind = MoveKind::R1Left;
  r.edge = edge;
  r.side = side;
  return r;
}

MoveRequest r2(int edge, int edge2 = 0, int side = 0, bool over = true) {
  MoveRequest r;
  r.kind = MoveKind::R2;
  r.edge = edge;
  r.edge2 = edge2;
  r.side = side;
  r.first_over = over;
  return r;
}

MoveRequest r3() {
  MoveRequest r;
  r.kind = MoveKind::R3;
  return r;
}

void check_all_pass(const MoveReport& rep) {
  CHECK(rep.identity_residual_zero);
  CHECK(rep.retraction_ok);
  CHECK(rep.isom_ok);
  CHECK(rep.chain_map_ok);
  for (const auto& m : rep.homology_match) CHECK(m.ok);
  CHECK_FALSE(rep.first_violation.has_value());
  CHECK(rep.ok());
}

struct Built {
  MovePair pair;
  HostComplex site;
  HostComplex partner;
  ChainMapSet maps;

  Built(const LinkDiagram& d, const MoveRequest& req)
      : pair(move_pair(d, req)), site(pair.site_diagram), partner(pair.partner) {
    switch (req.kind) {
      case MoveKind::R1Left:
        maps = build_r1_maps(site, partner, pair.site);
        break;
      case MoveKind::R2:
        maps = build_r2_maps(site, partner, pair.site);
        break;
      case MoveKind::R3:
        maps = build_r3_maps(site, partner, pair.site, *pair.partner_site);
        break;
    }
  }

  GeneratorClass cls(int global) const { return classify(pair.site, site, site.generator(global)); }
};

}  // namespace

TEST_CASE("R1 on the unknot and the trefoil, both kink orientations") {
  for (const char* pd : {"O(1)", kTrefoil})
    for (int side : {0, 1}) {
      const LinkDiagram d = parse_pd(pd);
      check_all_pass(verify_move(d, r1(d.edge_labels().front(), side)));
    }
}

TEST_CASE("R1 generator classes on the kinked unknot") {
  const MoveReport rep = verify_move(parse_pd("O(1)"), r1(1, 0));
  CHECK(rep.class_counts.at("(p,+)") == 2);
  CHECK(rep.class_counts.at("(p,-)") == 2);
  CHECK(rep.class_counts.at("neg") == 2);
}

TEST_CASE("rho_1 on (p,+) subtracts m(p:+) times the small-circle-minus generators") {
  const Built b(parse_pd("O(1)"), r1(1, 0));
  const PolyST s = PolyST::s(), t = PolyST::t();
  int seen = 0;
  for (int g = 0; g < b.site.size(); ++g) {
    const GeneratorClass c = b.cls(g);
    if (c.label != "(p,+)") continue;
    ++seen;
    CHECK(b.maps.site.rho_full.at(g, g) == PolyST(1));
    for (const auto& [row, k] : b.maps.site.rho_full.column(g)) {
      if (row == g) continue;
      const GeneratorClass rc = b.cls(row);
      REQUIRE(rc.label == "(p,-)");
      if (c.local_signs[0] == Sign::Plus) {
        // (+,+) -> (+,+) - s (+,-) - t (-,-)
        CHECK(k == (rc.local_signs[0] == Sign::Plus ? -s : -t));
      } else {
        // (-,+) -> (-,+) - (+,-)
        CHECK(rc.local_signs[0] == Sign::Plus);
        CHECK(k == PolyST(-1));
      }
    }
    CHECK(b.maps.site.rho_full.column(g).size() == (c.local_signs[0] == Sign::Plus ? 3U : 2U));
  }
  CHECK(seen == 2);
  for (int g = 0; g < b.site.size(); ++g)
    if (b.cls(g).label != "(p,+)") CHECK(b.maps.site.rho_full.column(g).empty());
}

TEST_CASE("R2 pokes: same edge, both faces, both layers; and between two edges of a face") {
  const LinkDiagram u = parse_pd("O(1)");
  for (int side : {0, 1})
    for (bool over : {true, false}) check_all_pass(verify_move(u, r2(1, 0, side, over)));
  const LinkDiagram t = parse_pd(kTrefoil);
  check_all_pass(verify_move(t, r2(1)));
  check_all_pass(verify_move(t, r2(1, 5)));
  CHECK_THROWS_AS(verify_move(t, r2(1, 2)), SiteNotFound);
}

TEST_CASE("h_2 on -- generators and rho_2 on ++ generators") {
  const Built b(parse_pd("O(1)"), r2(1));
  const int a = b.pair.site.crossing_ids[0];
  const int c = b.pair.site.crossing_ids[1];
  // no other crossings, so [x a b] differs from canonical order only by [a b]
  const int ab_sign = canonical_sign({a, c}).second;
  int minus_minus = 0, plus_plus = 0;
  for (int g = 0; g < b.site.size(); ++g) {
    const std::string label = b.cls(g).label;
    if (label == "--") {
      ++minus_minus;
      const auto& col = b.maps.site.h.column(g);
      REQUIRE(col.size() == 1);
      CHECK(b.cls(col[0].first).label == "+-,-");
      CHECK(col[0].second == PolyST(-ab_sign));
    }
    if (label == "++") {
      ++plus_plus;
      CHECK(b.maps.site.rho_full.column(g).empty());
      CHECK(b.maps.site.h.column(g).empty());
    }
  }
  CHECK(minus_minus > 0);
  CHECK(plus_plus > 0);
}

TEST_CASE("R3 on triangles of several braid closures") {
  for (const auto& word : std::vector<std::vector<int>>{{-1, -2, -1}, {1, 2, -1}, {-2, -1, -2}, {-1, -2, -1, 2}}) {
    const LinkDiagram d = braid_closure(3, word);
    REQUIRE_FALSE(find_r3_sites(d).empty());
    check_all_pass(verify_move(d, r3()));
  }
}

TEST_CASE("rho_3 sends --+ generators into the **- summand") {
  const Built b(braid_closure(3, {-1, -2, -1}), r3());
  int seen = 0;
  for (int g = 0; g < b.site.size(); ++g) {
    if (b.cls(g).label != "--+") continue;
    ++seen;
    CHECK_FALSE(b.maps.site.rho_full.column(g).empty());
    for (const auto& [row, k] : b.maps.site.rho_full.column(g)) CHECK(b.cls(row).label == "**-");
  }
  CHECK(seen > 0);
}

TEST_CASE("negative control: dropping the isom sign is caught") {
  const MoveReport rep = verify_move(parse_pd(kTrefoil), r2(1), Corruption::DropIsomSign);
  CHECK_FALSE(rep.ok());
  CHECK((!rep.isom_ok || !rep.chain_map_ok));
  REQUIRE(rep.first_violation.has_value());
}

TEST_CASE("negative control: dropping a homotopy term leaves a residual") {
  for (const auto& [d, req] : std::vector<std::pair<LinkDiagram, MoveRequest>>{
           {parse_pd("O(1)"), r1(1, 0)}, {parse_pd(kTrefoil), r2(1)}, {braid_closure(3, {-1, -2, -1}), r3()}}) {
    const MoveReport rep = verify_move(d, req, Corruption::DropHomotopyTerm);
    CHECK_FALSE(rep.identity_residual_zero);
    CHECK_FALSE(rep.ok());
    REQUIRE(rep.first_violation.has_value());
    CHECK_FALSE(rep.first_violation->entry.is_zero());
  }
}

TEST_CASE("move report JSON") {
  const MoveReport rep = verify_move(parse_pd("O(1)"), r1(1, 0));
  auto j = nlohmann::json::parse(move_report_json(rep));
  CHECK(j["schema_version"] == 1);
  CHECK(j["ok"] == true);
  CHECK_FALSE(move_report_text(rep).empty());
}
