#include "pkh/invariants.hpp"

#include <map>
#include <unordered_map>

#include "json.hpp"

namespace pkh {

namespace {

/// Render with edges renumbered by first appearance, so that diagrams
/// differing only in labels share a memo entry.
std::string canonical_key(const LinkDiagram& d) {
  std::map<int, int> relabel;
  std::string key;
  for (const auto& c : d.crossings()) {
    key += 'X';
    for (int e : c.edges) {
      auto [it, inserted] = relabel.try_emplace(e, static_cast<int>(relabel.size()) + 1);
      key += std::to_string(it->second);
      key += ',';
    }
  }
  key += 'O';
  key += std::to_string(d.loops().size());
  return key;
}

LaurentPoly skein(const LinkDiagram& d, std::unordered_map<std::string, LaurentPoly>& memo) {
  if (d.num_crossings() == 0) return circle_value().pow(static_cast<unsigned>(d.loops().size()));
  const std::string key = canonical_key(d);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  // expand the last crossing
  const int c = d.num_crossings() - 1;
  LaurentPoly r = LaurentPoly::monomial('A', 1, 1) * skein(smooth(d, c, +1), memo) +
                  LaurentPoly::monomial('A', 1, -1) * skein(smooth(d, c, -1), memo);
  memo.emplace(key, r);
  return r;
}

}  // namespace

LaurentPoly bracket_skein_oracle(const LinkDiagram& d) {
  // the memo is private to one evaluation, so concurrent calls never share it
  std::unordered_map<std::string, LaurentPoly> memo;
  return skein(d, memo);
}

LaurentPoly bracket_state_sum(const LinkDiagram& d) {
  const int n = d.num_crossings();
  if (n > kMaxCrossings) throw ValidationError("too many crossings for a state sum");
  LaurentPoly total('A');
  const LaurentPoly delta = circle_value();
  std::vector<LaurentPoly> delta_pow{LaurentPoly::monomial('A', 1, 0)};
  for (MarkerMask m = 0; m < (MarkerMask{1} << n); ++m) {
    const int k = resolve(d, m).circle_count;
    while (static_cast<int>(delta_pow.size()) <= k) delta_pow.push_back(delta_pow.back() * delta);
    const int pos = positive_marker_count(m, n);
    total += LaurentPoly::monomial('A', 1, pos - (n - pos)) * delta_pow[static_cast<size_t>(k)];
  }
  return total;
}

LaurentPoly normalize_bracket(const LaurentPoly& bracket, int writhe) {
  // (-A)^(-3w) = (-1)^(3w) A^(-3w)
  const Integer sign = (writhe % 2 == 0) ? 1 : -1;
  return laurent_substitute_q_for_A(LaurentPoly::monomial('A', sign, -3 * writhe) * bracket);
}

LaurentPoly jones_skein_oracle(const LinkDiagram& d) { return normalize_bracket(bracket_skein_oracle(d), d.writhe()); }

LaurentPoly jones_chain_level(const ChainComplex& c) {
  if (c.scheme != GradingScheme::Jones) throw Error("jones_chain_level needs a Jones-scheme complex");
  LaurentPoly out('q');
  for (size_t p = 0; p < c.generators.size(); ++p) {
    const int i = c.degrees[p];
    for (int j : c.secondary[p]) out.add_term(i % 2 == 0 ? 1 : -1, j);
  }
  return out;
}

LaurentPoly jones_from_chain(const ChainComplex& c) {
  if (c.scheme != GradingScheme::Jones) throw Error("jones_from_chain needs a Jones-scheme complex");
  GradedHomology h = homology_at(c, 0, 0);
  LaurentPoly out('q');
  for (const auto& g : h.groups) out.add_term(g.degree % 2 == 0 ? g.betti : -g.betti, *g.secondary);
  return out;
}

LaurentPoly bracket_from_homology(const ChainComplex& c) {
  if (c.scheme != GradingScheme::Bracket) throw Error("bracket_from_homology needs a bracket-scheme complex");
  GradedHomology h = homology_at(c, 0, 0);
  LaurentPoly out('A');
  for (const auto& g : h.groups) {
    const int tau = (g.degree - *g.secondary) / 2;
    out.add_term(tau % 2 == 0 ? g.betti : -g.betti, *g.secondary);
  }
  return out;
}

InvariantReport invariant_report(const LinkDiagram& d) {
  InvariantReport r;
  ChainComplex c = build_complex(d, GradingScheme::Jones);
  r.jones_from_chain = jones_from_chain(c);
  r.jones_chain_level = jones_chain_level(c);
  r.jones_from_skein = jones_skein_oracle(d);
  r.bracket_from_states = bracket_state_sum(d);
  r.bracket_from_skein = bracket_skein_oracle(d);
  r.jones_agree = r.jones_from_chain == r.jones_from_skein && r.jones_chain_level == r.jones_from_skein;
  r.bracket_agree = r.bracket_from_states == r.bracket_from_skein;
  return r;
}

std::string laurent_json(const LaurentPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [e, c] : p.to_pairs()) arr.push_back({e, c.get_si()});
  return arr.dump();
}

std::string invariant_report_json(const InvariantReport& r) {
  using nlohmann::json;
  auto poly = [](const LaurentPoly& p) {
    return json{{"text", p.to_string()}, {"terms", json::parse(laurent_json(p))}};
  };
  json j;
  j["schema_version"] = 1;
  j["jones_from_chain"] = poly(r.jones_from_chain);
  j["jones_chain_level"] = poly(r.jones_chain_level);
  j["jones_from_skein"] = poly(r.jones_from_skein);
  j["bracket_from_states"] = poly(r.bracket_from_states);
  j["bracket_from_skein"] = poly(r.bracket_from_skein);
  j["jones_agree"] = r.jones_agree;
  j["bracket_agree"] = r.bracket_agree;
  return j.dump(2);
}

}  // namespace pkh
