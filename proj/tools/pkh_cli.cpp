// Command-line front end: homology, polynomial invariants, d^2 checks,
// Reidemeister-move verification and corpus runs.
//
// Exit status: 0 on success, 1 when a verification fails, 2 on bad input.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pkh/complex.hpp"
#include "pkh/corpus.hpp"
#include "pkh/diagram.hpp"
#include "pkh/homology.hpp"
#include "pkh/invariants.hpp"
#include "pkh/reidemeister.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kInputError = 2;

struct InputOptions {
  std::string pd_path;
  std::string code;
  int max_crossings = 14;
};

struct Config {
  InputOptions in;
  long s = 0;
  long t = 0;
  std::string format = "text";
  std::string scheme = "jones";
  bool with_matrices = false;
  std::string move = "r1";
  int at_edge = 0;
  int with_edge = 0;
  int side = 0;
  bool under = false;
  std::vector<int> triangle;
  std::string corpus_dir;
  bool no_moves = false;
  unsigned threads = 0;
};

void add_input(CLI::App* cmd, InputOptions& in) {
  auto* pd = cmd->add_option("--pd", in.pd_path, "PD file");
  auto* code = cmd->add_option("--code", in.code, "PD code given inline");
  pd->excludes(code);
  cmd->add_option("--max-crossings", in.max_crossings, "refuse larger diagrams (default 14)");
}

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
}

pkh::LinkDiagram load(const InputOptions& in) {
  if (in.pd_path.empty() && in.code.empty()) throw pkh::ValidationError("no diagram given (use --pd or --code)");
  pkh::LinkDiagram d = in.pd_path.empty() ? pkh::parse_pd(in.code) : pkh::load_pd_file(in.pd_path);
  if (d.num_crossings() > in.max_crossings)
    throw pkh::ValidationError("diagram has " + std::to_string(d.num_crossings()) +
                               " crossings; raise --max-crossings to allow more than " +
                               std::to_string(in.max_crossings));
  return d;
}

int cmd_homology(const Config& cfg) {
  const pkh::LinkDiagram d = load(cfg.in);
  const auto scheme = cfg.scheme == "bracket" ? pkh::GradingScheme::Bracket : pkh::GradingScheme::Jones;
  const pkh::ChainComplex c = pkh::build_complex(d, scheme);
  const pkh::GradedHomology h = pkh::homology_at(c, pkh::Integer(cfg.s), pkh::Integer(cfg.t));
  std::cout << (cfg.format == "json" ? pkh::homology_json(h) + "\n" : pkh::homology_text(h));
  return kOk;
}

int cmd_jones(const Config& cfg) {
  const pkh::LinkDiagram d = load(cfg.in);
  const pkh::InvariantReport r = pkh::invariant_report(d);
  if (cfg.format == "json") {
    std::cout << pkh::invariant_report_json(r) << "\n";
  } else {
    std::cout << "jones (homology)  " << r.jones_from_chain.to_string() << "\n";
    std::cout << "jones (chains)    " << r.jones_chain_level.to_string() << "\n";
    std::cout << "jones (skein)     " << r.jones_from_skein.to_string() << "\n";
    std::cout << (r.jones_agree ? "agree" : "MISMATCH") << "\n";
  }
  return r.jones_agree ? kOk : kVerificationFailed;
}

int cmd_bracket(const Config& cfg) {
  const pkh::LinkDiagram d = load(cfg.in);
  const pkh::LaurentPoly states = pkh::bracket_state_sum(d);
  const pkh::LaurentPoly skein = pkh::bracket_skein_oracle(d);
  const pkh::LaurentPoly homology =
      pkh::bracket_from_homology(pkh::build_complex(d, pkh::GradingScheme::Bracket));
  const bool ok = states == skein && homology == skein;
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["bracket_from_states"] = {{"text", states.to_string()}, {"terms", nlohmann::json::parse(pkh::laurent_json(states))}};
    j["bracket_from_skein"] = {{"text", skein.to_string()}, {"terms", nlohmann::json::parse(pkh::laurent_json(skein))}};
    j["bracket_from_homology"] = {{"text", homology.to_string()},
                                  {"terms", nlohmann::json::parse(pkh::laurent_json(homology))}};
    j["agree"] = ok;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "bracket (states)   " << states.to_string() << "\n";
    std::cout << "bracket (skein)    " << skein.to_string() << "\n";
    std::cout << "bracket (homology) " << homology.to_string() << "\n";
    std::cout << (ok ? "agree" : "MISMATCH") << "\n";
  }
  return ok ? kOk : kVerificationFailed;
}

int cmd_check_d2(const Config& cfg) {
  const pkh::LinkDiagram d = load(cfg.in);
  const pkh::ChainComplex c = pkh::build_complex(d, pkh::GradingScheme::Jones);
  const pkh::D2Report r = pkh::check_d2(c);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["ok"] = r.ok;
    if (!r.ok)
      j["first_violation"] = {{"position", r.position}, {"row", r.row}, {"col", r.col}, {"entry", r.entry.to_string()}};
    j["complex"] = nlohmann::json::parse(pkh::complex_report_json(c, cfg.with_matrices));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "generators " << c.total_generators() << ", d^2 = 0: " << (r.ok ? "yes" : "NO") << "\n";
    if (!r.ok)
      std::cout << "  first non-zero entry at position " << r.position << " row " << r.row << " col " << r.col
                << ": " << r.entry.to_string() << "\n";
  }
  return r.ok ? kOk : kVerificationFailed;
}

int cmd_verify_move(const Config& cfg) {
  const pkh::LinkDiagram d = load(cfg.in);
  pkh::MoveRequest req;
  req.kind = pkh::move_kind_from_string(cfg.move);
  if (req.kind != pkh::MoveKind::R3 && cfg.at_edge == 0) {
    if (d.num_edges() == 0) throw pkh::SiteNotFound("diagram has no edges");
    req.edge = d.edge_labels().front();
  } else {
    req.edge = cfg.at_edge;
  }
  req.edge2 = cfg.with_edge;
  req.side = cfg.side;
  req.first_over = !cfg.under;
  req.triangle = cfg.triangle;
  const int added = req.kind == pkh::MoveKind::R1Left ? 1 : req.kind == pkh::MoveKind::R2 ? 2 : 0;
  if (d.num_crossings() + added > cfg.in.max_crossings)
    throw pkh::ValidationError("the move would exceed --max-crossings");
  const pkh::MoveReport r = pkh::verify_move(d, req);
  std::cout << (cfg.format == "json" ? pkh::move_report_json(r) + "\n" : pkh::move_report_text(r));
  return r.ok() ? kOk : kVerificationFailed;
}

int cmd_corpus(const Config& cfg) {
  std::string dir = cfg.corpus_dir;
  if (dir.empty()) {
    const char* env = std::getenv(pkh::kCorpusEnvVar);
    dir = env ? env : "corpus";
  }
  const auto files = pkh::corpus_files(dir);
  pkh::CorpusOptions opt;
  opt.max_crossings = cfg.in.max_crossings;
  opt.run_moves = !cfg.no_moves;
  opt.threads = cfg.threads;
  const auto rows = pkh::run_corpus(files, opt);
  std::cout << (cfg.format == "json" ? pkh::corpus_json(rows) + "\n" : pkh::corpus_text(rows));
  for (const auto& r : rows)
    if (!r.ok()) return kVerificationFailed;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parametrized Khovanov homology: complexes, invariants and Reidemeister-move checks"};
  app.require_subcommand(1);
  Config cfg;

  auto* homology = app.add_subcommand("homology", "homology at a specialization (s, t)");
  add_input(homology, cfg.in);
  homology->add_option("--s", cfg.s, "value of s (default 0)");
  homology->add_option("--t", cfg.t, "value of t (default 0)");
  homology->add_option("--scheme", cfg.scheme, "grading scheme")->check(CLI::IsMember({"jones", "bracket"}));
  add_format(homology, cfg.format);

  auto* jones = app.add_subcommand("jones", "Jones polynomial from homology, chains and the skein oracle");
  add_input(jones, cfg.in);
  add_format(jones, cfg.format);

  auto* bracket = app.add_subcommand("bracket", "Kauffman bracket from states, skein and homology");
  add_input(bracket, cfg.in);
  add_format(bracket, cfg.format);

  auto* d2 = app.add_subcommand("check-d2", "check that consecutive differentials compose to zero");
  add_input(d2, cfg.in);
  add_format(d2, cfg.format);
  d2->add_flag("--with-matrices", cfg.with_matrices, "include every matrix entry in the JSON report");

  auto* verify = app.add_subcommand("verify-move", "build and verify the chain maps of one Reidemeister move");
  add_input(verify, cfg.in);
  add_format(verify, cfg.format);
  verify->add_option("--move", cfg.move, "r1, r2 or r3")->check(CLI::IsMember({"r1", "r2", "r3"}));
  verify->add_option("--at-edge", cfg.at_edge, "edge to act on (r1, r2; default: smallest label)");
  verify->add_option("--with-edge", cfg.with_edge, "second edge of an r2 move (default: same edge)");
  verify->add_option("--side", cfg.side, "r1: kink orientation; r2: face left (0) or right (1) of the edge")
      ->check(CLI::Range(0, 1));
  verify->add_flag("--under", cfg.under, "r2: push the first edge under the second");
  verify->add_option("--triangle", cfg.triangle, "r3: the three crossing ids of the triangle")->expected(3);

  auto* corpus = app.add_subcommand("corpus", "run every check over a directory of PD files");
  corpus->add_option("--dir", cfg.corpus_dir, std::string("corpus directory (default: $") + pkh::kCorpusEnvVar +
                                                  " or ./corpus)");
  corpus->add_option("--max-crossings", cfg.in.max_crossings, "skip larger diagrams as errors (default 14)");
  corpus->add_flag("--no-moves", cfg.no_moves, "skip the Reidemeister-move verifications");
  corpus->add_option("--threads", cfg.threads, "worker threads (default: hardware concurrency)");
  add_format(corpus, cfg.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*homology) return cmd_homology(cfg);
    if (*jones) return cmd_jones(cfg);
    if (*bracket) return cmd_bracket(cfg);
    if (*d2) return cmd_check_d2(cfg);
    if (*verify) return cmd_verify_move(cfg);
    if (*corpus) return cmd_corpus(cfg);
  } catch (const pkh::SiteMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const pkh::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
