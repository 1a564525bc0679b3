#include "pkh/reidemeister.hpp"

#include <algorithm>
#include <functional>

#include "json.hpp"

namespace pkh {

// --- host complex ----------------------------------------------------------

HostComplex::HostComplex(const LinkDiagram& d) : res_(d), complex_(build_complex(res_, GradingScheme::Jones)) {
  for (size_t pos = 0; pos < complex_.generators.size(); ++pos) {
    offset_.push_back(static_cast<int>(flat_.size()));
    for (const auto& g : complex_.generators[pos]) {
      flat_.push_back(g);
      position_.push_back(static_cast<int>(pos));
    }
  }
  offset_.push_back(static_cast<int>(flat_.size()));
  const int n = size();
  delta_ = PolyMatrix(n, n);
  for (size_t pos = 0; pos < complex_.differentials.size(); ++pos) {
    const PolyMatrix& m = complex_.differentials[pos];
    for (int col = 0; col < m.cols(); ++col)
      for (const auto& [row, k] : m.column(col))
        delta_.add(offset_[pos + 1] + row, offset_[pos] + col, k);
  }
}

int HostComplex::global_index(const Generator& g) const {
  auto it = complex_.index.find(g);
  if (it == complex_.index.end()) throw Error("generator is not part of the complex");
  return offset_[static_cast<size_t>(it->second.first)] + it->second.second;
}

int HostComplex::degree_of(int global) const {
  return complex_.degrees[static_cast<size_t>(position_[static_cast<size_t>(global)])];
}

std::pair<int, int> HostComplex::local_of(int global) const {
  const int pos = position_[static_cast<size_t>(global)];
  return {pos, global - offset_[static_cast<size_t>(pos)]};
}

void HostComplex::add_column(PolyMatrix& m, int col, const Chain& c, const PolyST& k) const {
  for (const auto& [g, v] : c) m.add(global_index(g), col, v * k);
}

namespace {

// --- local helpers ---------------------------------------------------------

bool positive_at(MarkerMask m, int c) { return (m >> c) & 1U; }
MarkerMask with_marker(MarkerMask m, int c, bool positive) {
  return positive ? (m | (MarkerMask{1} << c)) : (m & ~(MarkerMask{1} << c));
}
Sign sign_at(const ResolutionTable& res, const Generator& g, int edge_label) {
  return sign_of_bit((g.signs >> res.circle_of(g.markers, edge_label)) & 1U);
}
SignMask with_sign(SignMask s, int circle, Sign v) {
  return v == Sign::Plus ? (s | (SignMask{1} << circle)) : (s & ~(SignMask{1} << circle));
}

/// g (x) [x E] = ordering_sign(g, E) * g, where x lists the other negative
/// markers of g in increasing order and E is appended in the given order.
int ordering_sign(const Generator& g, int n, const std::vector<int>& extras) {
  std::vector<int> order;
  for (int c = 0; c < n; ++c)
    if (!positive_at(g.markers, c) && std::find(extras.begin(), extras.end(), c) == extras.end())
      order.push_back(c);
  for (int e : extras) {
    if (positive_at(g.markers, e)) throw Error("ordering lists a crossing with a positive marker");
    order.push_back(e);
  }
  return canonical_sign(order).second;
}

Chain single(const Generator& g, const PolyST& k) {
  Chain c;
  add_to(c, g, k);
  return c;
}

/// Signs for the circles of `to` under markers m, read off generator g of
/// `from` through a label correspondence (target label -> source label, or
/// nothing to skip the edge). Circles listed in `fixed` take the given sign.
/// Every other circle must meet the correspondence, and all of its mapped
/// edges must lie on a single source circle.
SignMask transport(const ResolutionTable& from, const Generator& g, const ResolutionTable& to, MarkerMask m,
                   const std::function<std::optional<int>(int)>& source_label,
                   const std::map<int, Sign>& fixed = {}) {
  const CircleArrangement& arr = to.at(m);
  const auto& labels = to.diagram().edge_labels();
  std::vector<int> source_circle(static_cast<size_t>(arr.circle_count), -1);
  for (size_t e = 0; e < labels.size(); ++e) {
    const int k = arr.edge_to_circle[e];
    if (fixed.count(k)) continue;
    auto src = source_label(labels[e]);
    if (!src) continue;
    const int sc = from.circle_of(g.markers, *src);
    int& slot = source_circle[static_cast<size_t>(k)];
    if (slot == -1)
      slot = sc;
    else if (slot != sc)
      throw SiteMismatch("circle correspondence across the move is not well defined");
  }
  SignMask out = 0;
  for (int k = 0; k < arr.circle_count; ++k) {
    auto f = fixed.find(k);
    Sign v;
    if (f != fixed.end()) {
      v = f->second;
    } else {
      const int sc = source_circle[static_cast<size_t>(k)];
      if (sc == -1) throw SiteMismatch("a circle has no counterpart across the move");
      v = sign_of_bit((g.signs >> sc) & 1U);
    }
    out = with_sign(out, k, v);
  }
  return out;
}

std::function<std::optional<int>(int)> identity_except(std::vector<int> skip) {
  return [skip = std::move(skip)](int l) -> std::optional<int> {
    if (std::find(skip.begin(), skip.end(), l) != skip.end()) return std::nullopt;
    return l;
  };
}

std::function<std::optional<int>(int)> inverse_of(const std::map<int, int>& edge_map) {
  std::map<int, int> inv;
  for (const auto& [from, to] : edge_map) inv.try_emplace(to, from);
  return [inv = std::move(inv)](int l) -> std::optional<int> {
    auto it = inv.find(l);
    if (it == inv.end()) return std::nullopt;
    return it->second;
  };
}

PolyMatrix transpose(const PolyMatrix& m) {
  PolyMatrix t(m.cols(), m.rows());
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& [r, k] : m.column(c)) t.add(c, r, k);
  return t;
}

PolyMatrix without_column(const PolyMatrix& m, int drop) {
  PolyMatrix out(m.rows(), m.cols());
  for (int c = 0; c < m.cols(); ++c) {
    if (c == drop) continue;
    for (const auto& [r, k] : m.column(c)) out.add(r, c, k);
  }
  return out;
}

/// Per-generator images, assembled into the matrices of one side.
struct SideBuilder {
  const HostComplex& host;
  std::vector<Chain> rho;
  std::vector<Chain> h;
  std::vector<bool> lead;
  std::vector<std::string> labels;

  explicit SideBuilder(const HostComplex& hc)
      : host(hc),
        rho(static_cast<size_t>(hc.size())),
        h(static_cast<size_t>(hc.size())),
        lead(static_cast<size_t>(hc.size()), false),
        labels(static_cast<size_t>(hc.size())) {}

  const Chain& rho_of(const Generator& g) const { return rho[static_cast<size_t>(host.global_index(g))]; }

  SideMaps finish(Corruption corruption) const {
    const int n = host.size();
    SideMaps s;
    s.labels = labels;
    std::vector<int> lead_pos(static_cast<size_t>(n), -1);
    for (int g = 0; g < n; ++g)
      if (lead[static_cast<size_t>(g)]) {
        lead_pos[static_cast<size_t>(g)] = static_cast<int>(s.leads.size());
        s.leads.push_back(g);
      }
    const int l = static_cast<int>(s.leads.size());
    s.rho_full = PolyMatrix(n, n);
    s.rho = PolyMatrix(l, n);
    s.inj = PolyMatrix(n, l);
    s.h = PolyMatrix(n, n);
    for (int g = 0; g < n; ++g) {
      host.add_column(s.rho_full, g, rho[static_cast<size_t>(g)]);
      for (const auto& [gen, k] : rho[static_cast<size_t>(g)]) {
        const int p = lead_pos[static_cast<size_t>(host.global_index(gen))];
        if (p >= 0) s.rho.add(p, g, k);
      }
      host.add_column(s.h, g, h[static_cast<size_t>(g)]);
    }
    for (int k = 0; k < l; ++k) host.add_column(s.inj, k, rho[static_cast<size_t>(s.leads[static_cast<size_t>(k)])]);
    if (corruption == Corruption::DropHomotopyTerm) {
      for (int g = 0; g < n; ++g)
        if (!h[static_cast<size_t>(g)].empty()) {
          s.h = without_column(s.h, g);
          break;
        }
    }
    return s;
  }
};

std::vector<int> lead_lookup(const SideMaps& s, int n) {
  std::vector<int> pos(static_cast<size_t>(n), -1);
  for (size_t k = 0; k < s.leads.size(); ++k) pos[static_cast<size_t>(s.leads[k])] = static_cast<int>(k);
  return pos;
}

void require_kind(const MoveSite& site, MoveKind k, size_t crossings, size_t edges) {
  if (site.kind != k || site.crossing_ids.size() != crossings || site.edge_ids.size() != edges)
    throw SiteMismatch("move site does not match the requested move");
}

std::string sign_word(std::initializer_list<bool> positive) {
  std::string s;
  for (bool p : positive) s += p ? '+' : '-';
  return s;
}

}  // namespace

SideMaps trivial_side(const HostComplex& host) {
  const int n = host.size();
  SideMaps s;
  for (int g = 0; g < n; ++g) s.leads.push_back(g);
  s.rho_full = PolyMatrix::identity(n);
  s.rho = PolyMatrix::identity(n);
  s.inj = PolyMatrix::identity(n);
  s.h = PolyMatrix(n, n);
  return s;
}

// --- classification --------------------------------------------------------

GeneratorClass classify(const MoveSite& site, const HostComplex& host, const Generator& g) {
  const ResolutionTable& res = host.resolutions();
  const auto& ids = site.crossing_ids;
  GeneratorClass out;
  switch (site.kind) {
    case MoveKind::R1Left: {
      require_kind(site, MoveKind::R1Left, 1, 1);
      const int a = ids[0];
      const int small = site.edge_ids[0];
      if (!positive_at(g.markers, a)) {
        out.label = "neg";
        out.local_signs = {sign_at(res, g, small)};
        return out;
      }
      const auto& edges = host.diagram().crossing(a).edges;
      const int outer_slot = static_cast<int>(std::find_if(edges.begin(), edges.end(), [&](int e) { return e != small; }) - edges.begin());
      const Sign p = sign_of_bit((g.signs >> res.circle_at(g.markers, a, outer_slot)) & 1U);
      const Sign q = sign_at(res, g, small);
      out.label = q == Sign::Plus ? "(p,+)" : "(p,-)";
      out.local_signs = {p, q};
      out.lead = q == Sign::Plus;
      return out;
    }
    case MoveKind::R2: {
      require_kind(site, MoveKind::R2, 2, 2);
      const bool pa = positive_at(g.markers, ids[0]);
      const bool pb = positive_at(g.markers, ids[1]);
      out.label = sign_word({pa, pb});
      if (pa && !pb) {
        const Sign small = sign_at(res, g, site.edge_ids[0]);
        out.label += small == Sign::Plus ? ",+" : ",-";
        out.local_signs = {small};
      }
      out.lead = !pa && pb;
      return out;
    }
    case MoveKind::R3: {
      require_kind(site, MoveKind::R3, 3, 3);
      const bool pa = positive_at(g.markers, ids[0]);
      const bool pb = positive_at(g.markers, ids[1]);
      const bool pc = positive_at(g.markers, ids[2]);
      if (!pc) {
        out.label = "**-";
        out.lead = true;
        return out;
      }
      out.label = sign_word({pa, pb, pc});
      if (pa && !pb) {
        const Sign small = sign_at(res, g, site.edge_ids[0]);
        out.label += small == Sign::Plus ? ",+" : ",-";
        out.local_signs = {small};
      }
      out.lead = !pa && pb;
      return out;
    }
  }
  return out;
}

// --- R1 --------------------------------------------------------------------

ChainMapSet build_r1_maps(const HostComplex& d, const HostComplex& d_prime, const MoveSite& site,
                          Corruption corruption) {
  require_kind(site, MoveKind::R1Left, 1, 1);
  const ResolutionTable& res = d.resolutions();
  const int n = d.diagram().num_crossings();
  const int a = site.crossing_ids[0];
  const int small = site.edge_ids[0];
  if (d_prime.diagram().num_crossings() != n - 1) throw SiteMismatch("R1 partner must have one crossing fewer");
  const auto& edges = d.diagram().crossing(a).edges;
  const int outer_slot = static_cast<int>(std::find_if(edges.begin(), edges.end(), [&](int e) { return e != small; }) - edges.begin());

  SideBuilder b(d);
  for (int idx = 0; idx < d.size(); ++idx) {
    const Generator& g = d.generator(idx);
    GeneratorClass cls = classify(site, d, g);
    b.labels[static_cast<size_t>(idx)] = cls.label;
    if (positive_at(g.markers, a)) {
      if (!cls.lead) continue;
      // (p,+) -> (p,+) - (m(p:+), -)
      const int ks = res.circle_of(g.markers, small);
      const int ko = res.circle_at(g.markers, a, outer_slot);
      b.lead[static_cast<size_t>(idx)] = true;
      Chain r = single(g, PolyST(1));
      const SignSum& merged = merge(cls.local_signs[0], Sign::Plus);
      for (Sign v : {Sign::Minus, Sign::Plus}) {
        if (merged[v].is_zero()) continue;
        SignMask s = with_sign(with_sign(g.signs, ks, Sign::Minus), ko, v);
        add_to(r, {g.markers, s}, -merged[v]);
      }
      b.rho[static_cast<size_t>(idx)] = std::move(r);
    } else {
      // (neg marker at a, p) (x) [xa] -> (p,-) (x) [x]
      const MarkerMask m2 = with_marker(g.markers, a, true);
      const int ks2 = res.circle_of(m2, small);
      const SignMask s2 = transport(res, g, res, m2, identity_except({small}), {{ks2, Sign::Minus}});
      b.h[static_cast<size_t>(idx)] = single({m2, s2}, PolyST(ordering_sign(g, n, {a})));
    }
  }

  ChainMapSet out;
  out.kind = MoveKind::R1Left;
  out.site = b.finish(corruption);
  out.partner = trivial_side(d_prime);
  const MarkerMask keep = (MarkerMask{1} << (n - 1)) - 1;
  if (a != n - 1) throw SiteMismatch("R1 crossing must be the last crossing");
  out.isom = PolyMatrix(d_prime.size(), static_cast<int>(out.site.leads.size()));
  auto to_d = inverse_of(site.edge_map);
  for (size_t k = 0; k < out.site.leads.size(); ++k) {
    const Generator& g = d.generator(out.site.leads[k]);
    const MarkerMask m2 = g.markers & keep;
    const SignMask s2 = transport(res, g, d_prime.resolutions(), m2, to_d);
    out.isom.add(d_prime.global_index({m2, s2}), static_cast<int>(k), PolyST(1));
  }
  return out;
}

// --- R2 --------------------------------------------------------------------

namespace {

/// Shared shape of the R2 and R3 sites: a carries the positive marker that
/// joins two sides of the small region, b the negative one. `small_edges`
/// are the edges bounding the small circle of the "+-" type.
struct BigonFrame {
  const ResolutionTable& res;
  int n;
  int a;
  int b;
  std::vector<int> small_edges;

  /// S'(T): T with a positive marker at a, the small circle signed -, every
  /// other circle signed as in T.
  Generator s_prime(const Generator& t) const {
    const MarkerMask m2 = with_marker(t.markers, a, true);
    const int small = res.circle_of(m2, small_edges[0]);
    return {m2, transport(res, t, res, m2, identity_except(small_edges), {{small, Sign::Minus}})};
  }
  /// P(Q): Q with a positive marker at b, signs carried over from Q.
  Generator p_of(const Generator& q) const {
    const MarkerMask m2 = with_marker(q.markers, b, true);
    return {m2, transport(res, q, res, m2, identity_except(small_edges))};
  }

  /// M (x) [xa] -> M (x) [xa] + sum c_T S'(T) (x) [xb], where
  /// delta_b(M (x) [xa]) = sum c_T T (x) [xab].
  Chain rho_lead(const Generator& g) const {
    Chain r = single(g, PolyST(1));
    for (const auto& [t, k] : differential_at(res, g, b)) {
      const Generator sp = s_prime(t);
      add_to(r, sp, k * PolyST(ordering_sign(t, n, {a, b}) * ordering_sign(sp, n, {b})));
    }
    return r;
  }
  /// T (x) [xab] -> -S'(T) (x) [xb].
  Chain h_minus_minus(const Generator& t) const {
    const Generator sp = s_prime(t);
    return single(sp, PolyST(-ordering_sign(t, n, {a, b}) * ordering_sign(sp, n, {b})));
  }
  /// Q (x) [xb] -> P (x) [x]; checks that Q occurs in delta_b(P) with
  /// coefficient one.
  Chain h_plus_minus(const Generator& q) const {
    const Generator p = p_of(q);
    const int ord = ordering_sign(q, n, {b});
    Chain db = differential_at(res, p, b);
    auto it = db.find(q);
    if (it == db.end() || !(it->second == PolyST(ord)))
      throw SiteMismatch("split at b does not produce the small circle with coefficient one");
    return single(p, PolyST(ord));
  }
};

}  // namespace

ChainMapSet build_r2_maps(const HostComplex& d, const HostComplex& d_prime, const MoveSite& site,
                          Corruption corruption) {
  require_kind(site, MoveKind::R2, 2, 2);
  const ResolutionTable& res = d.resolutions();
  const int n = d.diagram().num_crossings();
  const int a = site.crossing_ids[0];
  const int bb = site.crossing_ids[1];
  if (d_prime.diagram().num_crossings() != n - 2 || std::min(a, bb) != n - 2 || std::max(a, bb) != n - 1)
    throw SiteMismatch("R2 crossings must be the last two crossings");
  BigonFrame f{res, n, a, bb, site.edge_ids};

  SideBuilder b(d);
  std::vector<GeneratorClass> cls(static_cast<size_t>(d.size()));
  for (int idx = 0; idx < d.size(); ++idx) {
    cls[static_cast<size_t>(idx)] = classify(site, d, d.generator(idx));
    b.labels[static_cast<size_t>(idx)] = cls[static_cast<size_t>(idx)].label;
    if (cls[static_cast<size_t>(idx)].lead) {
      b.lead[static_cast<size_t>(idx)] = true;
      b.rho[static_cast<size_t>(idx)] = f.rho_lead(d.generator(idx));
    }
  }
  for (int idx = 0; idx < d.size(); ++idx) {
    const Generator& g = d.generator(idx);
    const std::string& label = cls[static_cast<size_t>(idx)].label;
    if (label == "--") {
      b.h[static_cast<size_t>(idx)] = f.h_minus_minus(g);
    } else if (label == "+-,+") {
      b.h[static_cast<size_t>(idx)] = f.h_plus_minus(g);
      // Q (x) [xb] -> -rho(delta_a(P) (x) [xa])
      const Generator p = f.p_of(g);
      Chain r;
      for (const auto& [m, k] : differential_at(res, p, a)) add_chain(r, b.rho_of(m), -k);
      b.rho[static_cast<size_t>(idx)] = scaled(r, PolyST(ordering_sign(g, n, {bb})));
    }
  }

  ChainMapSet out;
  out.kind = MoveKind::R2;
  out.site = b.finish(corruption);
  out.partner = trivial_side(d_prime);
  const MarkerMask keep = (MarkerMask{1} << (n - 2)) - 1;
  out.isom = PolyMatrix(d_prime.size(), static_cast<int>(out.site.leads.size()));
  auto to_d = inverse_of(site.edge_map);
  for (size_t k = 0; k < out.site.leads.size(); ++k) {
    const int idx = out.site.leads[k];
    const Generator& g = d.generator(idx);
    const MarkerMask m2 = g.markers & keep;
    const SignMask s2 = transport(res, g, d_prime.resolutions(), m2, to_d);
    int coeff = ordering_sign(g, n, {a});
    if (corruption != Corruption::DropIsomSign && d.degree_of(idx) % 2 != 0) coeff = -coeff;
    out.isom.add(d_prime.global_index({m2, s2}), static_cast<int>(k), PolyST(coeff));
  }
  return out;
}

// --- R3 --------------------------------------------------------------------

namespace {

SideMaps r3_side(const HostComplex& host, const MoveSite& site, Corruption corruption) {
  require_kind(site, MoveKind::R3, 3, 3);
  const ResolutionTable& res = host.resolutions();
  const int n = host.diagram().num_crossings();
  const int a = site.crossing_ids[0];
  const int bb = site.crossing_ids[1];
  const int c = site.crossing_ids[2];
  BigonFrame f{res, n, a, bb, site.edge_ids};

  SideBuilder b(host);
  std::vector<std::string> labels(static_cast<size_t>(host.size()));
  for (int idx = 0; idx < host.size(); ++idx) {
    const Generator& g = host.generator(idx);
    GeneratorClass cls = classify(site, host, g);
    labels[static_cast<size_t>(idx)] = cls.label;
    b.labels[static_cast<size_t>(idx)] = cls.label;
    if (!cls.lead) continue;
    b.lead[static_cast<size_t>(idx)] = true;
    b.rho[static_cast<size_t>(idx)] = cls.label == "**-" ? single(g, PolyST(1)) : f.rho_lead(g);
  }
  for (int idx = 0; idx < host.size(); ++idx) {
    const Generator& g = host.generator(idx);
    const std::string& label = labels[static_cast<size_t>(idx)];
    if (label == "--+") {
      b.h[static_cast<size_t>(idx)] = f.h_minus_minus(g);
      // T (x) [xab] -> delta_c(S'(T) (x) [xb])
      const Generator sp = f.s_prime(g);
      const int ord = ordering_sign(g, n, {a, bb}) * ordering_sign(sp, n, {bb});
      b.rho[static_cast<size_t>(idx)] = scaled(differential_at(res, sp, c), PolyST(ord));
    } else if (label == "+-+,+") {
      b.h[static_cast<size_t>(idx)] = f.h_plus_minus(g);
      // Q (x) [xb] -> -(rho(delta_a(P) (x) [xa]) + delta_c(P) (x) [xc])
      const Generator p = f.p_of(g);
      Chain r;
      for (const auto& [m, k] : differential_at(res, p, a)) add_chain(r, b.rho_of(m), -k);
      add_chain(r, differential_at(res, p, c), PolyST(-1));
      b.rho[static_cast<size_t>(idx)] = scaled(r, PolyST(ordering_sign(g, n, {bb})));
    }
  }
  return b.finish(corruption);
}

}  // namespace

ChainMapSet build_r3_maps(const HostComplex& d, const HostComplex& d_prime, const MoveSite& site,
                          const MoveSite& partner_site, Corruption corruption) {
  require_kind(site, MoveKind::R3, 3, 3);
  require_kind(partner_site, MoveKind::R3, 3, 3);
  const int n = d.diagram().num_crossings();
  if (d_prime.diagram().num_crossings() != n) throw SiteMismatch("R3 partner must have the same crossings");
  const auto& ids = site.crossing_ids;
  const auto& ids2 = partner_site.crossing_ids;
  std::vector<int> sorted1 = ids, sorted2 = ids2;
  std::sort(sorted1.begin(), sorted1.end());
  std::sort(sorted2.begin(), sorted2.end());
  if (sorted1 != sorted2 || ids2[2] != ids[2]) throw SiteMismatch("rewritten triangle does not keep c");

  ChainMapSet out;
  out.kind = MoveKind::R3;
  out.site = r3_side(d, site, corruption);
  out.partner = r3_side(d_prime, partner_site, Corruption::None);

  const ResolutionTable& res = d.resolutions();
  std::vector<int> sides = site.edge_ids;
  sides.insert(sides.end(), partner_site.edge_ids.begin(), partner_site.edge_ids.end());
  auto exterior = identity_except(sides);
  const std::vector<int> partner_lead = lead_lookup(out.partner, d_prime.size());
  out.isom = PolyMatrix(static_cast<int>(out.partner.leads.size()), static_cast<int>(out.site.leads.size()));
  for (size_t k = 0; k < out.site.leads.size(); ++k) {
    const Generator& g = d.generator(out.site.leads[k]);
    // "-++" keeps its markers; "**-" trades the markers of a and b, and
    // Z (x) [y c] goes to Z' (x) [y' c] with a and b exchanged in y
    MarkerMask m2 = g.markers;
    int coeff = 1;
    if (!positive_at(g.markers, ids[2])) {
      const bool pa = positive_at(g.markers, ids[0]);
      const bool pb = positive_at(g.markers, ids[1]);
      m2 = with_marker(with_marker(m2, ids[0], pb), ids[1], pa);
      std::vector<int> order, order2;
      if (!pa) {
        order.push_back(ids[0]);
        order2.push_back(ids[1]);
      }
      if (!pb) {
        order.push_back(ids[1]);
        order2.push_back(ids[0]);
      }
      order.push_back(ids[2]);
      order2.push_back(ids[2]);
      coeff = ordering_sign(g, n, order) * ordering_sign({m2, 0}, n, order2);
    }
    const Generator g2{m2, transport(res, g, d_prime.resolutions(), m2, exterior)};
    const int target = partner_lead[static_cast<size_t>(d_prime.global_index(g2))];
    if (target < 0) throw SiteMismatch("R3 correspondence leaves the subcomplex");
    out.isom.add(target, static_cast<int>(k), PolyST(coeff));
  }
  return out;
}

// --- verification ----------------------------------------------------------

namespace {

CheckResult report_first(const std::string& check, const PolyMatrix& residual, const HostComplex& row_host,
                         const HostComplex& col_host, const std::vector<int>* row_leads = nullptr,
                         const std::vector<int>* col_leads = nullptr) {
  CheckResult r;
  auto first = residual.first_nonzero();
  if (!first) return r;
  r.ok = false;
  auto [row, col, entry] = *first;
  const int grow = row_leads ? (*row_leads)[static_cast<size_t>(row)] : row;
  const int gcol = col_leads ? (*col_leads)[static_cast<size_t>(col)] : col;
  Violation v;
  v.check = check;
  v.degree = col_host.degree_of(gcol);
  v.row = row_host.local_of(grow).second;
  v.col = col_host.local_of(gcol).second;
  v.entry = entry;
  r.violation = v;
  return r;
}

CheckResult both(CheckResult a, const CheckResult& b) { return a.ok ? b : a; }

}  // namespace

CheckResult verify_chain_map(const PolyMatrix& f, const HostComplex& source, const HostComplex& target) {
  if (f.rows() != target.size() || f.cols() != source.size())
    throw Error("chain map dimensions do not match the complexes");
  return report_first("chain_map", target.delta() * f - f * source.delta(), target, source);
}

CheckResult verify_homotopy_identity(const SideMaps& maps, const HostComplex& host) {
  const int n = host.size();
  if (maps.h.rows() != n || maps.h.cols() != n) throw Error("homotopy dimensions do not match the complex");
  // h lowers the homological degree by one
  for (int col = 0; col < n; ++col)
    for (const auto& [row, k] : maps.h.column(col))
      if (host.degree_of(row) != host.degree_of(col) - 1) throw Error("homotopy does not have degree -1");
  const PolyMatrix& d = host.delta();
  PolyMatrix residual = d * maps.h + maps.h * d + maps.inj * maps.rho - PolyMatrix::identity(n);
  return report_first("homotopy_identity", residual, host, host);
}

CheckResult verify_retraction(const SideMaps& maps, const HostComplex& host) {
  const int n = host.size();
  const int l = static_cast<int>(maps.leads.size());
  const PolyMatrix& d = host.delta();
  const PolyMatrix p = maps.inj * maps.rho;
  CheckResult r = report_first("retraction", maps.rho * maps.inj - PolyMatrix::identity(l), host, host,
                               &maps.leads, &maps.leads);
  r = both(r, report_first("image_in_subcomplex", p - maps.rho_full, host, host));
  const PolyMatrix dp = d * p;
  r = both(r, report_first("subcomplex_closed", dp - p * dp, host, host));
  const PolyMatrix pd = p * d;
  r = both(r, report_first("contractible_closed", pd - pd * p, host, host));
  (void)n;
  return r;
}

CheckResult verify_isom(const ChainMapSet& maps, const HostComplex& d, const HostComplex& d_prime) {
  const PolyMatrix& f = maps.isom;
  CheckResult r;
  auto fail = [&](const std::string& why) {
    r.ok = false;
    r.violation = Violation{why, 0, 0, 0, PolyST(0)};
    return r;
  };
  if (f.rows() != f.cols()) return fail("isom_not_square");
  std::vector<bool> hit(static_cast<size_t>(f.rows()), false);
  for (int c = 0; c < f.cols(); ++c) {
    const auto& col = f.column(c);
    if (col.size() != 1) return fail("isom_not_permutation");
    const auto& [row, k] = col.front();
    if (!(k == PolyST(1) || k == PolyST(-1)) || hit[static_cast<size_t>(row)]) return fail("isom_not_permutation");
    hit[static_cast<size_t>(row)] = true;
  }
  // induced differentials on the two subcomplexes
  const PolyMatrix dc = maps.site.rho * d.delta() * maps.site.inj;
  const PolyMatrix dc2 = maps.partner.rho * d_prime.delta() * maps.partner.inj;
  r = report_first("isom_chain_map", dc2 * f - f * dc, d_prime, d, &maps.partner.leads, &maps.site.leads);
  return r;
}

const std::vector<std::pair<long, long>>& invariance_grid() {
  static const std::vector<std::pair<long, long>> grid{{0, 0}, {0, 1}, {1, 0}, {2, -3}};
  return grid;
}

bool MoveReport::ok() const {
  bool homology = std::all_of(homology_match.begin(), homology_match.end(), [](const auto& m) { return m.ok; });
  return identity_residual_zero && chain_map_ok && retraction_ok && isom_ok && homology;
}

MoveReport verify_move(const LinkDiagram& d, const MoveRequest& req, Corruption corruption) {
  MovePair pair = move_pair(d, req);
  HostComplex site(pair.site_diagram);
  HostComplex partner(pair.partner);
  ChainMapSet maps;
  switch (req.kind) {
    case MoveKind::R1Left:
      maps = build_r1_maps(site, partner, pair.site, corruption);
      break;
    case MoveKind::R2:
      maps = build_r2_maps(site, partner, pair.site, corruption);
      break;
    case MoveKind::R3:
      maps = build_r3_maps(site, partner, pair.site, *pair.partner_site, corruption);
      break;
  }

  MoveReport rep;
  rep.move = req.kind;
  rep.site_diagram = render_pd(pair.site_diagram);
  rep.partner_diagram = render_pd(pair.partner);
  for (const auto& l : maps.site.labels) ++rep.class_counts[l];

  std::vector<CheckResult> checks;
  auto record = [&](const CheckResult& r) {
    if (!r.ok && !rep.first_violation) rep.first_violation = r.violation;
    return r.ok;
  };

  rep.identity_residual_zero = record(verify_homotopy_identity(maps.site, site));
  if (req.kind == MoveKind::R3)
    rep.identity_residual_zero = record(verify_homotopy_identity(maps.partner, partner)) && rep.identity_residual_zero;

  rep.retraction_ok = record(verify_retraction(maps.site, site));
  if (req.kind == MoveKind::R3)
    rep.retraction_ok = record(verify_retraction(maps.partner, partner)) && rep.retraction_ok;

  rep.isom_ok = record(verify_isom(maps, site, partner));

  // the maps between the full complexes, through the two subcomplexes
  rep.chain_map_ok = false;
  if (rep.isom_ok) {
    const PolyMatrix forward = maps.partner.inj * maps.isom * maps.site.rho;
    const PolyMatrix backward = maps.site.inj * transpose(maps.isom) * maps.partner.rho;
    bool ok = record(verify_chain_map(forward, site, partner));
    ok = record(verify_chain_map(backward, partner, site)) && ok;
    // isom rho in isom^-1 is the identity on the partner's subcomplex
    ok = record(report_first("round_trip", forward * backward - maps.partner.inj * maps.partner.rho, partner,
                             partner)) &&
         ok;
    rep.chain_map_ok = ok;
  }

  for (const auto& [s, t] : invariance_grid()) {
    GradedHomology h1 = homology_at(site.complex(), Integer(s), Integer(t));
    GradedHomology h2 = homology_at(partner.complex(), Integer(s), Integer(t));
    rep.homology_match.push_back({s, t, same_homology(h1, h2)});
  }
  return rep;
}

std::string move_report_json(const MoveReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema_version"] = 1;
  j["move"] = to_string(r.move);
  j["site_diagram"] = r.site_diagram;
  j["partner_diagram"] = r.partner_diagram;
  j["identity_residual_zero"] = r.identity_residual_zero;
  j["chain_map_ok"] = r.chain_map_ok;
  j["retraction_ok"] = r.retraction_ok;
  j["isom_ok"] = r.isom_ok;
  ordered_json hm = ordered_json::array();
  for (const auto& m : r.homology_match) hm.push_back({{"s", m.s}, {"t", m.t}, {"ok", m.ok}});
  j["homology_match"] = hm;
  ordered_json counts = ordered_json::object();
  for (const auto& [label, k] : r.class_counts) counts[label] = k;
  j["class_counts"] = counts;
  if (r.first_violation) {
    const auto& v = *r.first_violation;
    j["first_violation"] = {{"check", v.check},
                            {"degree", v.degree},
                            {"row", v.row},
                            {"col", v.col},
                            {"entry", v.entry.to_string()}};
  }
  j["ok"] = r.ok();
  return j.dump(2);
}

std::string move_report_text(const MoveReport& r) {
  std::string out = "move " + to_string(r.move) + "\n";
  out += "  site:    " + r.site_diagram + "\n";
  out += "  partner: " + r.partner_diagram + "\n";
  auto flag = [](bool b) { return b ? std::string("yes") : std::string("NO"); };
  out += "  homotopy identity residual zero: " + flag(r.identity_residual_zero) + "\n";
  out += "  retraction and subcomplexes:     " + flag(r.retraction_ok) + "\n";
  out += "  isom bijective chain map:        " + flag(r.isom_ok) + "\n";
  out += "  induced maps are chain maps:     " + flag(r.chain_map_ok) + "\n";
  for (const auto& m : r.homology_match)
    out += "  homology at (" + std::to_string(m.s) + "," + std::to_string(m.t) + ") agrees: " + flag(m.ok) + "\n";
  if (r.first_violation) {
    const auto& v = *r.first_violation;
    out += "  first violation: " + v.check + " at degree " + std::to_string(v.degree) + ", row " +
           std::to_string(v.row) + ", col " + std::to_string(v.col) + ", entry " + v.entry.to_string() + "\n";
  }
  return out;
}

}  // namespace pkh
