#include "pkh/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <thread>

#include "json.hpp"
#include "pkh/complex.hpp"
#include "pkh/invariants.hpp"
#include "pkh/reidemeister.hpp"

namespace pkh {

bool CorpusRow::ok() const {
  return error.empty() && orientation_ok && d2_ok && jones_ok && bracket_ok &&
         std::all_of(moves.begin(), moves.end(), [](const MoveCheck& m) { return m.ok; });
}

std::string describe(const MoveRequest& r) {
  std::string s = to_string(r.kind);
  switch (r.kind) {
    case MoveKind::R1Left:
      s += " edge " + std::to_string(r.edge) + " side " + std::to_string(r.side);
      break;
    case MoveKind::R2:
      s += " edge " + std::to_string(r.edge);
      if (r.edge2 != 0 && r.edge2 != r.edge) s += " with " + std::to_string(r.edge2);
      s += " side " + std::to_string(r.side) + (r.first_over ? " over" : " under");
      break;
    case MoveKind::R3:
      s += " triangle";
      for (int c : r.triangle) s += " " + std::to_string(c);
      break;
  }
  return s;
}

std::vector<MoveRequest> standard_moves(const LinkDiagram& d) {
  std::vector<MoveRequest> out;
  if (d.num_edges() == 0) return out;
  const int e = d.edge_labels().front();
  for (int side : {0, 1}) {
    MoveRequest r;
    r.kind = MoveKind::R1Left;
    r.edge = e;
    r.side = side;
    out.push_back(r);
  }
  {
    MoveRequest r;
    r.kind = MoveKind::R2;
    r.edge = e;
    out.push_back(r);
  }
  // the first pair of distinct edges that share the face left of the first
  if (d.num_crossings() > 0 && d.orientation_consistent()) {
    const EdgeEnd t = *d.tail(e);
    const Face& f = d.faces()[static_cast<size_t>(d.face_of(t))];
    for (const auto& dart : f.darts) {
      const int e2 = d.crossing(dart.crossing).edges[static_cast<size_t>(dart.slot)];
      if (e2 == e) continue;
      MoveRequest r;
      r.kind = MoveKind::R2;
      r.edge = e;
      r.edge2 = e2;
      r.first_over = false;
      out.push_back(r);
      break;
    }
  }
  auto sites = find_r3_sites(d);
  if (!sites.empty()) {
    MoveRequest r;
    r.kind = MoveKind::R3;
    r.triangle = {sites.front()[0], sites.front()[1], sites.front()[2]};
    out.push_back(r);
  }
  return out;
}

CorpusRow check_diagram(const std::string& name, const LinkDiagram& d, const CorpusOptions& opt) {
  CorpusRow row;
  row.name = name;
  row.pd = render_pd(d);
  row.crossings = d.num_crossings();
  try {
    if (d.num_crossings() > opt.max_crossings)
      throw ValidationError(std::to_string(d.num_crossings()) + " crossings exceed the limit of " +
                            std::to_string(opt.max_crossings));
    row.orientation_ok = d.orientation_consistent();
    if (!row.orientation_ok) {
      row.error = "crossing signs do not induce a consistent orientation (edge " +
                  std::to_string(d.inconsistent_edges().front()) + ")";
      return row;
    }
    ChainComplex c = build_complex(d, GradingScheme::Jones);
    row.d2_ok = check_d2(c).ok;
    InvariantReport inv = invariant_report(d);
    row.jones_ok = inv.jones_agree;
    row.bracket_ok = inv.bracket_agree;
    if (!opt.run_moves) return row;
    for (const auto& req : standard_moves(d)) {
      MoveCheck m;
      m.name = describe(req);
      try {
        MoveReport rep = verify_move(d, req);
        m.ok = rep.ok();
        if (rep.first_violation) m.detail = rep.first_violation->check;
      } catch (const Error& ex) {
        m.detail = ex.what();
      }
      row.moves.push_back(m);
    }
  } catch (const Error& ex) {
    row.error = ex.what();
  }
  return row;
}

std::vector<std::string> corpus_files(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error("corpus directory " + dir + " does not exist");
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".pd") files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error("corpus directory " + dir + " holds no .pd files");
  return files;
}

std::vector<CorpusRow> run_corpus(const std::vector<std::string>& files, const CorpusOptions& opt) {
  std::vector<CorpusRow> rows(files.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k = next++; k < files.size(); k = next++) {
      const std::string name = std::filesystem::path(files[k]).stem().string();
      try {
        rows[k] = check_diagram(name, load_pd_file(files[k]), opt);
      } catch (const Error& ex) {
        rows[k].name = name;
        rows[k].error = ex.what();
      }
    }
  };
  unsigned n = opt.threads ? opt.threads : std::max(1U, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(std::max<size_t>(files.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

std::string corpus_json(const std::vector<CorpusRow>& rows) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema_version"] = 1;
  ordered_json arr = ordered_json::array();
  bool all = true;
  for (const auto& r : rows) {
    ordered_json e{{"name", r.name},      {"pd", r.pd},           {"crossings", r.crossings},
                   {"orientation", r.orientation_ok}, {"d2", r.d2_ok}, {"jones", r.jones_ok},
                   {"bracket", r.bracket_ok}};
    ordered_json moves = ordered_json::array();
    for (const auto& m : r.moves) {
      ordered_json mj{{"move", m.name}, {"ok", m.ok}};
      if (!m.detail.empty()) mj["detail"] = m.detail;
      moves.push_back(mj);
    }
    e["moves"] = moves;
    if (!r.error.empty()) e["error"] = r.error;
    e["ok"] = r.ok();
    all = all && r.ok();
    arr.push_back(e);
  }
  j["entries"] = arr;
  j["all_ok"] = all;
  return j.dump(2);
}

std::string corpus_text(const std::vector<CorpusRow>& rows) {
  auto mark = [](bool b) { return b ? std::string("ok") : std::string("FAIL"); };
  std::string out;
  for (const auto& r : rows) {
    out += (r.ok() ? "PASS " : "FAIL ") + r.name + "  (" + std::to_string(r.crossings) + " crossings)\n";
    if (!r.error.empty()) {
      out += "    error: " + r.error + "\n";
      continue;
    }
    out += "    d2 " + mark(r.d2_ok) + ", jones " + mark(r.jones_ok) + ", bracket " + mark(r.bracket_ok) + "\n";
    for (const auto& m : r.moves)
      out += "    " + m.name + ": " + mark(m.ok) + (m.detail.empty() ? "" : " (" + m.detail + ")") + "\n";
  }
  return out;
}

}  // namespace pkh
