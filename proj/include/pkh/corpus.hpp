#pragma once

#include <string>
#include <vector>

#include "pkh/diagram.hpp"

namespace pkh {

/// Default corpus location when no directory is given.
inline constexpr const char* kCorpusEnvVar = "PKH_CORPUS";

struct MoveCheck {
  std::string name;  // e.g. "r2 edge 1 side 0 over"
  bool ok = false;
  std::string detail;
};

struct CorpusRow {
  std::string name;
  std::string pd;
  int crossings = 0;
  std::string error;  // non-empty when the entry could not be processed
  bool orientation_ok = false;
  bool d2_ok = false;
  bool jones_ok = false;
  bool bracket_ok = false;
  std::vector<MoveCheck> moves;

  bool ok() const;
};

struct CorpusOptions {
  int max_crossings = 14;
  bool run_moves = true;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// The moves exercised on one diagram: both R1 kinks on the first edge, a
/// same-edge R2 poke, an R2 between two edges sharing a face, and the first
/// R3 site.
std::vector<MoveRequest> standard_moves(const LinkDiagram& d);
std::string describe(const MoveRequest& r);

CorpusRow check_diagram(const std::string& name, const LinkDiagram& d, const CorpusOptions& opt);

/// Every *.pd file of a directory, sorted by name. Throws Error when the
/// directory is missing or holds no such file.
std::vector<std::string> corpus_files(const std::string& dir);

/// Processes the files in parallel; rows come back in file order.
std::vector<CorpusRow> run_corpus(const std::vector<std::string>& files, const CorpusOptions& opt);

std::string corpus_json(const std::vector<CorpusRow>& rows);
std::string corpus_text(const std::vector<CorpusRow>& rows);

}  // namespace pkh
