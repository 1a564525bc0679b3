#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "pkh/homology.hpp"
#include "support/minor_gcd.hpp"

using namespace pkh;

namespace {

using pkh::testing::Dense;
using pkh::testing::minor_gcd_factors;

IntegerMatrix to_matrix(const Dense& a) {
  IntegerMatrix m(static_cast<int>(a.size()), a.empty() ? 0 : static_cast<int>(a[0].size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != 0) m.add(static_cast<int>(i), static_cast<int>(j), a[i][j]);
  return m;
}

const HomologyGroup* find(const GradedHomology& h, int degree, std::optional<int> secondary = std::nullopt) {
  for (const auto& g : h.groups)
    if (g.degree == degree && g.secondary == secondary) return &g;
  return nullptr;
}

}  // namespace

TEST_CASE("Smith normal form examples") {
  SmithForm a = smith_normal_form(IntegerMatrix::from_dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  CHECK(a.rank == 3);
  CHECK(a.factors == std::vector<Integer>{2, 6, 12});
  SmithForm b = smith_normal_form(IntegerMatrix::from_dense({{2, 0}, {0, 3}}));
  CHECK(b.factors == std::vector<Integer>{1, 6});
  SmithForm z = smith_normal_form(IntegerMatrix::from_dense({{0, 0}, {0, 0}}));
  CHECK(z.rank == 0);
  CHECK(z.factors.empty());
  CHECK(smith_normal_form(IntegerMatrix(0, 3)).rank == 0);
}

TEST_CASE("Smith normal form agrees with the minor-gcd oracle") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> dim(1, 5), entry(-9, 9), density(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const int r = dim(rng), c = dim(rng);
    Dense a(static_cast<size_t>(r), std::vector<Integer>(static_cast<size_t>(c)));
    for (auto& row : a)
      for (auto& x : row) x = density(rng) == 0 ? 0 : entry(rng);
    SmithForm s = smith_normal_form(to_matrix(a));
    const auto expect = minor_gcd_factors(a);
    CHECK(s.factors == expect);
    CHECK(s.rank == static_cast<int>(expect.size()));
  }
}

TEST_CASE("unknot and kink homology") {
  GradedHomology u = homology_at(build_complex(parse_pd("O(1)"), GradingScheme::Jones), 0, 0);
  REQUIRE(u.groups.size() == 2);
  CHECK(find(u, 0, -1) != nullptr);
  CHECK(find(u, 0, 1) != nullptr);
  CHECK(total_rank(u) == 2);

  GradedHomology k = homology_at(build_complex(parse_pd("X(1,1,2,2)+"), GradingScheme::Jones), 0, 0);
  CHECK(same_homology(u, k));
  for (const auto& [s, t] : std::vector<std::pair<long, long>>{{0, 1}, {1, 0}, {2, -3}}) {
    GradedHomology a = homology_at(build_complex(parse_pd("O(1)"), GradingScheme::Jones), s, t);
    GradedHomology b = homology_at(build_complex(parse_pd("X(1,1,2,2)+"), GradingScheme::Jones), s, t);
    CHECK(same_homology(a, b));
    CHECK(total_rank(a) == 2);
  }
}

TEST_CASE("left-handed trefoil matches the frozen fixture") {
  std::ifstream in(std::string(PKH_SOURCE_DIR) + "/tests/fixtures/trefoil_homology.json");
  REQUIRE(in);
  const auto fixture = nlohmann::json::parse(in);
  GradedHomology h =
      homology_at(build_complex(parse_pd("X(1,4,2,5)- X(3,6,4,1)- X(5,2,6,3)-"), GradingScheme::Jones), 0, 0);
  REQUIRE(h.groups.size() == fixture["groups"].size());
  for (size_t k = 0; k < h.groups.size(); ++k) {
    const auto& g = h.groups[k];
    const auto& f = fixture["groups"][k];
    CHECK(g.degree == f["i"].get<int>());
    CHECK(g.secondary == f["j"].get<int>());
    CHECK(g.betti == f["rank"].get<int>());
    std::vector<long> torsion;
    for (const auto& x : g.torsion) torsion.push_back(x.get_si());
    CHECK(torsion == f["torsion"].get<std::vector<long>>());
  }
  const HomologyGroup* z2 = find(h, -2, -7);
  REQUIRE(z2 != nullptr);
  CHECK(z2->betti == 0);
  CHECK(z2->torsion == std::vector<Integer>{2});
}

TEST_CASE("trefoil away from the origin") {
  ChainComplex c = build_complex(parse_pd("X(1,4,2,5)- X(3,6,4,1)- X(5,2,6,3)-"), GradingScheme::Jones);
  GradedHomology lee = homology_at(c, 0, 1);
  CHECK(total_rank(lee) == 2);
  const HomologyGroup* g = find(lee, -2);
  REQUIRE(g != nullptr);
  CHECK(g->torsion == std::vector<Integer>{2, 2});
  GradedHomology other = homology_at(c, 2, -3);
  g = find(other, -2);
  REQUIRE(g != nullptr);
  CHECK(g->torsion == std::vector<Integer>{2, 4});
}

TEST_CASE("homology JSON carries a schema version") {
  GradedHomology u = homology_at(build_complex(parse_pd("O(1)"), GradingScheme::Jones), 0, 0);
  auto j = nlohmann::json::parse(homology_json(u));
  CHECK(j["schema_version"] == 1);
  CHECK(j["total_rank"] == 2);
  CHECK_FALSE(homology_text(u).empty());
}
