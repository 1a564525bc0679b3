#include "doctest.h"
#include "json.hpp"
#include "pkh/corpus.hpp"

using namespace pkh;

namespace {

std::string source(const std::string& rel) { return std::string(PKH_SOURCE_DIR) + "/" + rel; }

}  // namespace

TEST_CASE("the bundled corpus passes every check") {
  CorpusOptions opt;
  opt.threads = 2;
  const auto rows = run_corpus(corpus_files(source("corpus")), opt);
  REQUIRE(rows.size() >= 8);
  for (const auto& r : rows) {
    INFO(r.name << ": " << r.error);
    CHECK(r.ok());
    CHECK_FALSE(r.moves.empty());
  }
}

TEST_CASE("a sign inconsistent with the orientation fails only its own row") {
  CorpusOptions opt;
  opt.run_moves = false;
  const auto files = corpus_files(source("tests/fixtures/corpus_bad"));
  const auto rows = run_corpus(files, opt);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    if (r.name.find("bad_sign") != std::string::npos) {
      CHECK_FALSE(r.ok());
      CHECK_FALSE(r.error.empty());
    } else {
      CHECK(r.ok());
    }
  }
  auto j = nlohmann::json::parse(corpus_json(rows));
  CHECK(j["schema_version"] == 1);
  CHECK_FALSE(corpus_text(rows).empty());
}

TEST_CASE("rows come back in file order and do not depend on the thread count") {
  CorpusOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const auto files = corpus_files(source("corpus"));
  CHECK(corpus_json(run_corpus(files, one)) == corpus_json(run_corpus(files, many)));
}

TEST_CASE("missing or empty corpus directories are input errors") {
  CHECK_THROWS_AS(corpus_files(source("tests/fixtures/empty_corpus")), Error);
  CHECK_THROWS_AS(corpus_files(source("tests/fixtures/no_such_directory")), Error);
}

TEST_CASE("oversized diagrams are reported, not computed") {
  CorpusOptions opt;
  opt.max_crossings = 2;
  const CorpusRow r = check_diagram("trefoil", parse_pd("X(1,4,2,5)- X(3,6,4,1)- X(5,2,6,3)-"), opt);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.error.empty());
}

TEST_CASE("standard moves cover R1, R2 and R3 where sites exist") {
  const auto moves = standard_moves(braid_closure(3, {-1, -2, -1}));
  bool has_r3 = false;
  for (const auto& m : moves) has_r3 = has_r3 || m.kind == MoveKind::R3;
  CHECK(has_r3);
  CHECK(moves.size() >= 4);
  for (const auto& m : moves) CHECK_FALSE(describe(m).empty());
}
