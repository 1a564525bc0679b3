#include "pkh/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace pkh {

namespace {

/// Union-find over arbitrary integer keys.
class LabelUnion {
 public:
  int find(int x) {
    auto it = parent_.find(x);
    if (it == parent_.end()) {
      parent_[x] = x;
      return x;
    }
    if (it->second == x) return x;
    int root = find(it->second);
    parent_[x] = root;
    return root;
  }
  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // keep the smaller label as representative so relabelings are stable
    if (a < b)
      parent_[b] = a;
    else
      parent_[a] = b;
  }

 private:
  std::map<int, int> parent_;
};

/// Does the edge enter the crossing at this slot?
bool slot_is_incoming(int slot, int sign) {
  switch (slot) {
    case 0:
      return true;
    case 2:
      return false;
    case 1:
      return sign < 0;
    default:
      return sign > 0;
  }
}

/// Rebuilds a diagram after deleting crossings, given which labels become
/// the same arc. Arcs that no longer meet a crossing become loops.
LinkDiagram rebuild_without(const LinkDiagram& d, const std::set<int>& removed, LabelUnion& uf) {
  std::vector<CrossingData> kept;
  std::set<int> used;
  for (const auto& c : d.crossings()) {
    if (removed.count(c.id)) continue;
    CrossingData n = c;
    for (auto& e : n.edges) {
      e = uf.find(e);
      used.insert(e);
    }
    kept.push_back(n);
  }
  std::set<int> loops;
  for (int l : d.loops()) loops.insert(uf.find(l));
  for (int id : removed)
    for (int e : d.crossing(id).edges)
      if (!used.count(uf.find(e))) loops.insert(uf.find(e));
  return LinkDiagram::from_parts(std::move(kept), std::vector<int>(loops.begin(), loops.end()));
}

}  // namespace

// ---------------------------------------------------------------------------
// LinkDiagram

LinkDiagram LinkDiagram::from_parts(std::vector<CrossingData> crossings, std::vector<int> loops) {
  LinkDiagram d;
  for (size_t i = 0; i < crossings.size(); ++i) {
    crossings[i].id = static_cast<int>(i);
    if (crossings[i].sign != 1 && crossings[i].sign != -1)
      throw ValidationError("crossing " + std::to_string(i) + " has sign other than +1/-1");
    for (int e : crossings[i].edges)
      if (e <= 0) throw ValidationError("edge labels must be positive, got " + std::to_string(e));
  }
  for (int l : loops)
    if (l <= 0) throw ValidationError("edge labels must be positive, got " + std::to_string(l));
  std::sort(loops.begin(), loops.end());
  d.crossings_ = std::move(crossings);
  d.loops_ = std::move(loops);
  d.build_indices();
  return d;
}

void LinkDiagram::build_indices() {
  std::map<int, int> count;
  for (const auto& c : crossings_)
    for (int e : c.edges) ++count[e];
  for (size_t i = 0; i < loops_.size(); ++i) {
    if (i > 0 && loops_[i] == loops_[i - 1])
      throw ValidationError("loop O(" + std::to_string(loops_[i]) + ") listed twice");
    if (count.count(loops_[i]))
      throw ValidationError("edge " + std::to_string(loops_[i]) + " is both a loop and a crossing edge");
  }
  for (const auto& [e, k] : count)
    if (k != 2)
      throw ValidationError("edge " + std::to_string(e) + " appears " + std::to_string(k) +
                            " times; every edge must join exactly two crossing slots");

  labels_.clear();
  for (const auto& [e, k] : count) labels_.push_back(e);
  for (int l : loops_) labels_.push_back(l);
  std::sort(labels_.begin(), labels_.end());
  label_index_.clear();
  for (size_t i = 0; i < labels_.size(); ++i) label_index_[labels_[i]] = static_cast<int>(i);

  const size_t m = labels_.size();
  dense_.clear();
  for (const auto& c : crossings_) {
    std::array<int, 4> idx{};
    for (size_t k = 0; k < 4; ++k) idx[k] = edge_index(c.edges[k]);
    dense_.push_back(idx);
  }
  ends_.assign(m, {});
  for (const auto& c : crossings_)
    for (int j = 0; j < 4; ++j) ends_[static_cast<size_t>(edge_index(c.edges[static_cast<size_t>(j)]))].push_back({c.id, j});

  tails_.assign(m, std::nullopt);
  heads_.assign(m, std::nullopt);
  inconsistent_edges_.clear();
  for (size_t i = 0; i < m; ++i) {
    if (ends_[i].empty()) continue;
    std::optional<EdgeEnd> h, t;
    int heads = 0;
    for (const auto& en : ends_[i]) {
      if (slot_is_incoming(en.slot, crossings_[static_cast<size_t>(en.crossing)].sign)) {
        h = en;
        ++heads;
      } else {
        t = en;
      }
    }
    if (heads == 1) {
      heads_[i] = h;
      tails_[i] = t;
    } else {
      inconsistent_edges_.push_back(labels_[i]);
    }
  }

  // faces: leave (c, j), arrive at (c', j'), continue with (c', j' - 1)
  const size_t n = crossings_.size();
  dart_face_.assign(n, {-1, -1, -1, -1});
  faces_.clear();
  for (size_t c = 0; c < n; ++c) {
    for (int j = 0; j < 4; ++j) {
      if (dart_face_[c][static_cast<size_t>(j)] >= 0) continue;
      Face f;
      EdgeEnd cur{static_cast<int>(c), j};
      const int fid = static_cast<int>(faces_.size());
      while (dart_face_[static_cast<size_t>(cur.crossing)][static_cast<size_t>(cur.slot)] < 0) {
        dart_face_[static_cast<size_t>(cur.crossing)][static_cast<size_t>(cur.slot)] = fid;
        f.darts.push_back(cur);
        EdgeEnd arr = opposite(cur);
        cur = {arr.crossing, (arr.slot + 3) % 4};
      }
      if (!(cur == f.darts.front()))
        throw ValidationError("face traversal did not close; the PD code is not a planar diagram");
      faces_.push_back(std::move(f));
    }
  }

  // planarity: every connected piece with V crossings must have V + 2 faces
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> root = [&](int x) { return comp[static_cast<size_t>(x)] == x ? x : comp[static_cast<size_t>(x)] = root(comp[static_cast<size_t>(x)]); };
  for (const auto& e : ends_)
    if (e.size() == 2) comp[static_cast<size_t>(root(e[0].crossing))] = root(e[1].crossing);
  std::map<int, int> verts, face_count;
  for (size_t c = 0; c < n; ++c) ++verts[root(static_cast<int>(c))];
  for (const auto& f : faces_) ++face_count[root(f.darts.front().crossing)];
  for (const auto& [r, v] : verts)
    if (face_count[r] != v + 2)
      throw ValidationError("PD code is not planar: a connected piece with " + std::to_string(v) +
                            " crossings has " + std::to_string(face_count[r]) + " faces, expected " +
                            std::to_string(v + 2));

  // link components: follow strands straight through crossings
  std::vector<char> seen(m, 0);
  components_ = 0;
  for (size_t i = 0; i < m; ++i) {
    if (seen[i]) continue;
    ++components_;
    seen[i] = 1;
    if (ends_[i].empty()) continue;
    EdgeEnd start = ends_[i][0];
    EdgeEnd cur = start;
    do {
      EdgeEnd through{cur.crossing, (cur.slot + 2) % 4};
      seen[static_cast<size_t>(edge_index(crossings_[static_cast<size_t>(through.crossing)].edges[static_cast<size_t>(through.slot)]))] = 1;
      cur = opposite(through);
    } while (!(cur == start));
  }
}

int LinkDiagram::edge_index(int label) const {
  auto it = label_index_.find(label);
  if (it == label_index_.end()) throw SiteNotFound("edge " + std::to_string(label) + " is not in the diagram");
  return it->second;
}

bool LinkDiagram::has_edge(int label) const { return label_index_.count(label) > 0; }

bool LinkDiagram::is_loop(int label) const { return std::binary_search(loops_.begin(), loops_.end(), label); }

const std::vector<EdgeEnd>& LinkDiagram::ends(int label) const {
  return ends_[static_cast<size_t>(edge_index(label))];
}

int LinkDiagram::writhe() const {
  int w = 0;
  for (const auto& c : crossings_) w += c.sign;
  return w;
}

std::optional<EdgeEnd> LinkDiagram::tail(int label) const { return tails_[static_cast<size_t>(edge_index(label))]; }

std::optional<EdgeEnd> LinkDiagram::head(int label) const { return heads_[static_cast<size_t>(edge_index(label))]; }

int LinkDiagram::face_of(EdgeEnd dart) const {
  return dart_face_.at(static_cast<size_t>(dart.crossing)).at(static_cast<size_t>(dart.slot));
}

EdgeEnd LinkDiagram::opposite(EdgeEnd dart) const {
  int label = crossings_[static_cast<size_t>(dart.crossing)].edges[static_cast<size_t>(dart.slot)];
  const auto& e = ends_[static_cast<size_t>(edge_index(label))];
  return e[0] == dart ? e[1] : e[0];
}

int writhe(const LinkDiagram& d) { return d.writhe(); }

// ---------------------------------------------------------------------------
// text format

LinkDiagram parse_pd(const std::string& text) {
  std::string src;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      src += line;
      src += '\n';
    }
  }
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError("PD parse error at offset " + std::to_string(pos) + ": " + what);
  };
  auto expect = [&](char ch) {
    skip_ws();
    if (pos >= src.size() || src[pos] != ch) throw fail(std::string("expected '") + ch + "'");
    ++pos;
  };
  auto read_int = [&] {
    skip_ws();
    size_t start = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    if (start == pos) throw fail("expected a positive integer edge label");
    if (pos - start > 9) throw fail("edge label too large");
    int v = std::stoi(src.substr(start, pos - start));
    if (v <= 0) throw fail("edge labels must be positive");
    return v;
  };

  std::vector<CrossingData> crossings;
  std::vector<int> loops;
  for (;;) {
    skip_ws();
    if (pos >= src.size()) break;
    char kind = src[pos++];
    if (kind == 'X') {
      expect('(');
      CrossingData c;
      for (int k = 0; k < 4; ++k) {
        if (k > 0) {
          skip_ws();
          if (pos < src.size() && src[pos] == ')') throw fail("crossing needs exactly four edge labels");
          expect(',');
        }
        c.edges[static_cast<size_t>(k)] = read_int();
      }
      skip_ws();
      if (pos < src.size() && src[pos] == ',') throw fail("crossing needs exactly four edge labels");
      expect(')');
      skip_ws();
      if (pos >= src.size() || (src[pos] != '+' && src[pos] != '-'))
        throw fail("crossing must be followed by its sign '+' or '-'");
      c.sign = src[pos++] == '+' ? 1 : -1;
      crossings.push_back(c);
    } else if (kind == 'O') {
      expect('(');
      loops.push_back(read_int());
      expect(')');
    } else {
      --pos;
      throw fail(std::string("unexpected character '") + kind + "'");
    }
  }
  return LinkDiagram::from_parts(std::move(crossings), std::move(loops));
}

LinkDiagram load_pd_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open PD file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_pd(ss.str());
}

std::string render_pd(const LinkDiagram& d) {
  std::ostringstream os;
  bool first = true;
  for (const auto& c : d.crossings()) {
    if (!first) os << ' ';
    first = false;
    os << "X(" << c.edges[0] << ',' << c.edges[1] << ',' << c.edges[2] << ',' << c.edges[3] << ')'
       << (c.sign > 0 ? '+' : '-');
  }
  for (int l : d.loops()) {
    if (!first) os << ' ';
    first = false;
    os << "O(" << l << ')';
  }
  return os.str();
}

int sign_from_over_exit(int over_out_slot) { return over_out_slot == 1 ? 1 : -1; }

CrossingData make_crossing(int under_in, int under_out, int over_in, int over_out, int sign) {
  CrossingData c;
  c.sign = sign;
  if (sign > 0)
    c.edges = {under_in, over_out, under_out, over_in};
  else
    c.edges = {under_in, over_in, under_out, over_out};
  return c;
}

// ---------------------------------------------------------------------------
// transformations

LinkDiagram smooth(const LinkDiagram& d, int crossing_id, int marker) {
  const auto& e = d.crossing(crossing_id).edges;
  LabelUnion uf;
  if (marker > 0) {
    uf.join(e[0], e[1]);
    uf.join(e[2], e[3]);
  } else {
    uf.join(e[0], e[3]);
    uf.join(e[1], e[2]);
  }
  return rebuild_without(d, {crossing_id}, uf);
}

LinkDiagram mirror(const LinkDiagram& d) {
  std::vector<CrossingData> cs = d.crossings();
  for (auto& c : cs) {
    std::swap(c.edges[1], c.edges[3]);
    c.sign = -c.sign;
  }
  return LinkDiagram::from_parts(std::move(cs), d.loops());
}

LinkDiagram remove_crossings(const LinkDiagram& d, const std::vector<int>& ids) {
  LabelUnion uf;
  std::set<int> removed(ids.begin(), ids.end());
  for (int id : removed) {
    const auto& e = d.crossing(id).edges;
    uf.join(e[0], e[2]);
    uf.join(e[1], e[3]);
  }
  return rebuild_without(d, removed, uf);
}

LinkDiagram remove_r1(const LinkDiagram& d, int id) {
  if (id < 0 || id >= d.num_crossings()) throw SiteNotFound("no crossing " + std::to_string(id));
  const auto& e = d.crossing(id).edges;
  bool kink = false;
  for (int j = 0; j < 4; ++j)
    if (e[static_cast<size_t>(j)] == e[static_cast<size_t>((j + 1) % 4)]) kink = true;
  if (!kink) throw IllegalSite("crossing " + std::to_string(id) + " is not a one-crossing kink");
  return remove_crossings(d, {id});
}

LinkDiagram remove_r2(const LinkDiagram& d, int a, int b) {
  if (a == b || a < 0 || b < 0 || a >= d.num_crossings() || b >= d.num_crossings())
    throw SiteNotFound("R2 removal needs two distinct crossings");
  const auto& ea = d.crossing(a).edges;
  const auto& eb = d.crossing(b).edges;
  std::vector<int> shared;
  for (int x : ea)
    if (std::find(eb.begin(), eb.end(), x) != eb.end() &&
        std::find(shared.begin(), shared.end(), x) == shared.end())
      shared.push_back(x);
  if (shared.size() != 2) throw IllegalSite("crossings do not bound a bigon");
  auto slot_of = [](const std::array<int, 4>& e, int x) {
    return static_cast<int>(std::find(e.begin(), e.end(), x) - e.begin());
  };
  int sa0 = slot_of(ea, shared[0]), sa1 = slot_of(ea, shared[1]);
  int sb0 = slot_of(eb, shared[0]), sb1 = slot_of(eb, shared[1]);
  auto adjacent = [](int x, int y) { return (x + 1) % 4 == y || (y + 1) % 4 == x; };
  if (!adjacent(sa0, sa1) || !adjacent(sb0, sb1)) throw IllegalSite("crossings do not bound a bigon");
  // the same bigon side must be over (odd slot) at both crossings
  if ((sa0 % 2) != (sb0 % 2)) throw IllegalSite("bigon is not removable: over/under alternates");
  return remove_crossings(d, {a, b});
}

bool isomorphic(const LinkDiagram& a, const LinkDiagram& b) {
  if (a.num_crossings() != b.num_crossings() || a.loops().size() != b.loops().size() ||
      a.num_edges() != b.num_edges() || a.writhe() != b.writhe())
    return false;
  const int n = a.num_crossings();
  std::vector<int> cmap(static_cast<size_t>(n), -1), used(static_cast<size_t>(n), 0);
  std::map<int, int> emap;

  // Maps crossing ca -> cb and propagates along edges; records changes so a
  // failed branch can be undone.
  std::function<bool(int, int, std::vector<int>&, std::vector<int>&)> assign =
      [&](int ca, int cb, std::vector<int>& touched_c, std::vector<int>& touched_e) -> bool {
    std::vector<std::pair<int, int>> stack{{ca, cb}};
    while (!stack.empty()) {
      auto [x, y] = stack.back();
      stack.pop_back();
      if (cmap[static_cast<size_t>(x)] >= 0) {
        if (cmap[static_cast<size_t>(x)] != y) return false;
        continue;
      }
      if (used[static_cast<size_t>(y)]) return false;
      const auto& cx = a.crossing(x);
      const auto& cy = b.crossing(y);
      if (cx.sign != cy.sign) return false;
      cmap[static_cast<size_t>(x)] = y;
      used[static_cast<size_t>(y)] = 1;
      touched_c.push_back(x);
      for (int j = 0; j < 4; ++j) {
        int ex = cx.edges[static_cast<size_t>(j)], ey = cy.edges[static_cast<size_t>(j)];
        auto it = emap.find(ex);
        if (it != emap.end()) {
          if (it->second != ey) return false;
        } else {
          emap[ex] = ey;
          touched_e.push_back(ex);
        }
        EdgeEnd ox = a.opposite({x, j});
        EdgeEnd oy = b.opposite({y, j});
        if (ox.slot != oy.slot) return false;
        stack.push_back({ox.crossing, oy.crossing});
      }
    }
    return true;
  };

  std::function<bool(int)> search = [&](int start) -> bool {
    while (start < n && cmap[static_cast<size_t>(start)] >= 0) ++start;
    if (start == n) return true;
    for (int cand = 0; cand < n; ++cand) {
      if (used[static_cast<size_t>(cand)]) continue;
      std::vector<int> tc, te;
      bool ok = assign(start, cand, tc, te);
      if (ok && search(start + 1)) return true;
      for (int x : tc) {
        used[static_cast<size_t>(cmap[static_cast<size_t>(x)])] = 0;
        cmap[static_cast<size_t>(x)] = -1;
      }
      for (int e : te) emap.erase(e);
    }
    return false;
  };
  return search(0);
}

LinkDiagram braid_closure(int strands, const std::vector<int>& word) {
  if (strands < 1) throw ValidationError("braid needs at least one strand");
  int next = 1;
  std::vector<int> bottom(static_cast<size_t>(strands)), cur(static_cast<size_t>(strands));
  for (int p = 0; p < strands; ++p) bottom[static_cast<size_t>(p)] = cur[static_cast<size_t>(p)] = next++;
  std::vector<CrossingData> cs;
  for (int g : word) {
    int k = std::abs(g);
    if (g == 0 || k >= strands) throw ValidationError("braid generator out of range: " + std::to_string(g));
    size_t l = static_cast<size_t>(k - 1), r = static_cast<size_t>(k);
    int sw = cur[l], se = cur[r];
    int nw = next++, ne = next++;
    // strands run upward; sigma_k has the strand from the lower-left on top
    if (g > 0)
      cs.push_back(make_crossing(se, nw, sw, ne, 1));
    else
      cs.push_back(make_crossing(sw, ne, se, nw, -1));
    cur[l] = nw;
    cur[r] = ne;
  }
  std::map<int, int> close;
  for (size_t p = 0; p < static_cast<size_t>(strands); ++p) close[cur[p]] = bottom[p];
  std::vector<int> loops;
  for (auto& c : cs)
    for (auto& e : c.edges) {
      auto it = close.find(e);
      if (it != close.end()) e = it->second;
    }
  for (size_t p = 0; p < static_cast<size_t>(strands); ++p)
    if (cur[p] == bottom[p]) loops.push_back(bottom[p]);
  return LinkDiagram::from_parts(std::move(cs), std::move(loops));
}

// ---------------------------------------------------------------------------
// moves

std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::R1Left:
      return "r1";
    case MoveKind::R2:
      return "r2";
    case MoveKind::R3:
      return "r3";
  }
  return "?";
}

MoveKind move_kind_from_string(const std::string& s) {
  if (s == "r1" || s == "R1" || s == "R1_left") return MoveKind::R1Left;
  if (s == "r2" || s == "R2") return MoveKind::R2;
  if (s == "r3" || s == "R3") return MoveKind::R3;
  throw ParseError("unknown move '" + s + "' (expected r1, r2 or r3)");
}

namespace {

void require_oriented(const LinkDiagram& d) {
  if (!d.orientation_consistent())
    throw ValidationError("crossing signs do not induce a consistent orientation (edge " +
                          std::to_string(d.inconsistent_edges().front()) + ")");
}

void relabel_slot(std::vector<CrossingData>& cs, EdgeEnd at, int label) {
  cs[static_cast<size_t>(at.crossing)].edges[static_cast<size_t>(at.slot)] = label;
}

std::pair<LinkDiagram, MoveSite> insert_r1(const LinkDiagram& d, const MoveRequest& req) {
  const int e = req.edge;
  if (!d.has_edge(e)) throw SiteNotFound("edge " + std::to_string(e) + " is not in the diagram");
  std::vector<CrossingData> cs = d.crossings();
  std::vector<int> loops = d.loops();
  int fresh = d.max_label() + 1;
  const int small = fresh++;
  int e_out = e;
  if (d.is_loop(e)) {
    loops.erase(std::find(loops.begin(), loops.end(), e));
  } else {
    require_oriented(d);
    e_out = fresh++;
    relabel_slot(cs, *d.head(e), e_out);
  }
  CrossingData k;
  k.sign = 1;
  if (req.side == 0)
    k.edges = {e, e_out, small, small};
  else
    k.edges = {small, small, e_out, e};
  cs.push_back(k);
  LinkDiagram out = LinkDiagram::from_parts(std::move(cs), std::move(loops));

  MoveSite site;
  site.kind = MoveKind::R1Left;
  const int a = out.num_crossings() - 1;
  site.crossing_ids = {a};
  site.edge_ids = {small};
  for (int c = 0; c < a; ++c) site.crossing_map[c] = c;
  for (int l : out.edge_labels()) {
    if (l == small) continue;
    site.edge_map[l] = (l == e_out) ? e : l;
  }
  return {out, site};
}

std::pair<LinkDiagram, MoveSite> insert_r2(const LinkDiagram& d, const MoveRequest& req) {
  const int e1 = req.edge;
  const int e2 = req.edge2 == 0 ? req.edge : req.edge2;
  if (!d.has_edge(e1)) throw SiteNotFound("edge " + std::to_string(e1) + " is not in the diagram");
  if (!d.has_edge(e2)) throw SiteNotFound("edge " + std::to_string(e2) + " is not in the diagram");
  const bool same = e1 == e2;
  const bool loop = d.is_loop(e1);
  if (!same && (loop || d.is_loop(e2)))
    throw SiteNotFound("a crossingless component shares no face with another edge");

  std::vector<CrossingData> cs = d.crossings();
  std::vector<int> loops = d.loops();
  int fresh = d.max_label() + 1;

  // walk directions: with the face on the left, e2 runs west to east below
  // the face and e1 runs east to west above it
  int s1 = 1, s2 = 1;
  int alpha1, m1, beta1, alpha2, m2, beta2;
  if (loop) {
    s1 = s2 = req.side == 0 ? 1 : -1;
    loops.erase(std::find(loops.begin(), loops.end(), e1));
    alpha2 = beta1 = e1;
    m2 = fresh++;
    const int gamma = fresh++;
    m1 = fresh++;
    alpha1 = beta2 = gamma;
  } else {
    require_oriented(d);
    const EdgeEnd d1 = req.side == 0 ? *d.tail(e1) : *d.head(e1);
    s1 = req.side == 0 ? 1 : -1;
    if (same) {
      s2 = s1;
      alpha2 = e1;
      m2 = fresh++;
      const int gamma = fresh++;
      m1 = fresh++;
      beta1 = fresh++;
      alpha1 = beta2 = gamma;
      relabel_slot(cs, d.opposite(d1), beta1);
    } else {
      const Face& face = d.faces()[static_cast<size_t>(d.face_of(d1))];
      std::optional<EdgeEnd> d2;
      for (const auto& dart : face.darts)
        if (d.crossing(dart.crossing).edges[static_cast<size_t>(dart.slot)] == e2) d2 = dart;
      if (!d2)
        throw SiteNotFound("edges " + std::to_string(e1) + " and " + std::to_string(e2) +
                           " do not share the requested face");
      s2 = (*d.tail(e2) == *d2) ? 1 : -1;
      alpha1 = e1;
      m1 = fresh++;
      beta1 = fresh++;
      alpha2 = e2;
      m2 = fresh++;
      beta2 = fresh++;
      relabel_slot(cs, d.opposite(d1), beta1);
      relabel_slot(cs, d.opposite(*d2), beta2);
    }
  }

  enum { E = 0, N = 1, W = 2, S = 3 };
  auto build = [&](std::array<int, 4> piece, int e1_in, int e1_out, int e2_in, int e2_out) {
    int u_in = req.first_over ? e2_in : e1_in;
    int o_in = req.first_over ? e1_in : e2_in;
    (void)e1_out;
    (void)e2_out;
    CrossingData c;
    for (int k = 0; k < 4; ++k) c.edges[static_cast<size_t>(k)] = piece[static_cast<size_t>((u_in + k) % 4)];
    c.sign = (o_in == (u_in + 3) % 4) ? 1 : -1;
    return c;
  };
  // right crossing: e1 comes down from the north, e2 leaves to the east
  CrossingData right = build({beta2, alpha1, m2, m1}, s1 > 0 ? N : S, s1 > 0 ? S : N, s2 > 0 ? W : E,
                             s2 > 0 ? E : W);
  // left crossing: e1 goes back up to the north, e2 arrives from the west
  CrossingData left = build({m2, beta1, alpha2, m1}, s1 > 0 ? S : N, s1 > 0 ? N : S, s2 > 0 ? W : E,
                            s2 > 0 ? E : W);
  const int n = d.num_crossings();
  cs.push_back(right);
  cs.push_back(left);
  LinkDiagram out = LinkDiagram::from_parts(std::move(cs), std::move(loops));

  // a: positive marker joins the bigon sides; b: negative marker does
  auto positive_joins = [&](int id) {
    const auto& e = out.crossing(id).edges;
    int j1 = static_cast<int>(std::find(e.begin(), e.end(), m1) - e.begin());
    int j2 = static_cast<int>(std::find(e.begin(), e.end(), m2) - e.begin());
    int lo = std::min(j1, j2), hi = std::max(j1, j2);
    return (lo == 0 && hi == 1) || (lo == 2 && hi == 3);
  };
  MoveSite site;
  site.kind = MoveKind::R2;
  int a = positive_joins(n) ? n : n + 1;
  int b = a == n ? n + 1 : n;
  if (!positive_joins(a) || positive_joins(b)) throw IllegalSite("R2 bigon markers are not complementary");
  site.crossing_ids = {a, b};
  site.edge_ids = {m1, m2};
  for (int c = 0; c < n; ++c) site.crossing_map[c] = c;
  for (int l : out.edge_labels()) {
    if (l == m1 || l == m2) continue;
    if (l == beta1 || (same && l == alpha1))
      site.edge_map[l] = e1;
    else if (l == beta2)
      site.edge_map[l] = e2;
    else
      site.edge_map[l] = l;
  }
  return {out, site};
}

struct Triangle {
  std::array<int, 3> crossing;  // in face-walk order
  std::array<int, 3> side;      // side k runs from crossing k to crossing k+1
  std::array<int, 3> leave_slot;
};

std::optional<Triangle> triangle_face(const LinkDiagram& d, std::array<int, 3> ids) {
  std::sort(ids.begin(), ids.end());
  for (const auto& f : d.faces()) {
    if (f.darts.size() != 3) continue;
    std::array<int, 3> cs{f.darts[0].crossing, f.darts[1].crossing, f.darts[2].crossing};
    std::array<int, 3> sorted = cs;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != ids) continue;
    Triangle t;
    for (size_t k = 0; k < 3; ++k) {
      t.crossing[k] = f.darts[k].crossing;
      t.leave_slot[k] = f.darts[k].slot;
      t.side[k] = d.crossing(f.darts[k].crossing).edges[static_cast<size_t>(f.darts[k].slot)];
    }
    return t;
  }
  return std::nullopt;
}

}  // namespace

MoveSite r3_site(const LinkDiagram& d, std::array<int, 3> triangle) {
  for (int id : triangle)
    if (id < 0 || id >= d.num_crossings()) throw SiteNotFound("no crossing " + std::to_string(id));
  auto t = triangle_face(d, triangle);
  if (!t) throw SiteNotFound("crossings do not bound a triangular face");
  // side k starts at crossing k (slot leave_slot[k]) and ends at crossing
  // k+1 (slot leave_slot[k+1] + 1); odd slots are on the over strand
  std::array<int, 3> over_count{};
  for (size_t k = 0; k < 3; ++k) {
    int start_slot = t->leave_slot[k];
    int end_slot = (t->leave_slot[(k + 1) % 3] + 1) % 4;
    over_count[k] = (start_slot % 2) + (end_slot % 2);
  }
  std::array<int, 3> sorted = over_count;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{0, 1, 2})
    throw IllegalSite("triangle strands are not top/middle/bottom; no third Reidemeister move here");
  // crossing k joins sides k-1 and k; its positive marker joins them when
  // the leaving slot is even
  std::vector<int> pos, neg;
  for (size_t k = 0; k < 3; ++k) (t->leave_slot[k] % 2 == 0 ? pos : neg).push_back(static_cast<int>(k));
  if (pos.size() != 2) throw IllegalSite("mirrored third Reidemeister configuration is not supported");
  const int kb = neg[0];
  // b is where top and bottom meet; c follows b along the face walk
  const int kc = (kb + 1) % 3;
  const int ka = (kb + 2) % 3;
  auto strand_pair_has_top_and_bottom = [&](int k) {
    int before = over_count[static_cast<size_t>((k + 2) % 3)];
    int after = over_count[static_cast<size_t>(k)];
    return (before == 2 && after == 0) || (before == 0 && after == 2);
  };
  if (!strand_pair_has_top_and_bottom(kb) || t->leave_slot[static_cast<size_t>(kc)] % 2 != 0)
    throw IllegalSite("triangle is not in the supported third Reidemeister configuration");
  MoveSite site;
  site.kind = MoveKind::R3;
  site.crossing_ids = {t->crossing[static_cast<size_t>(ka)], t->crossing[static_cast<size_t>(kb)],
                       t->crossing[static_cast<size_t>(kc)]};
  site.edge_ids = {t->side[0], t->side[1], t->side[2]};
  return site;
}

std::vector<std::array<int, 3>> find_r3_sites(const LinkDiagram& d) {
  std::vector<std::array<int, 3>> out;
  for (const auto& f : d.faces()) {
    if (f.darts.size() != 3) continue;
    std::array<int, 3> ids{f.darts[0].crossing, f.darts[1].crossing, f.darts[2].crossing};
    if (ids[0] == ids[1] || ids[1] == ids[2] || ids[0] == ids[2]) continue;
    try {
      MoveSite s = r3_site(d, ids);
      out.push_back({s.crossing_ids[0], s.crossing_ids[1], s.crossing_ids[2]});
    } catch (const IllegalSite&) {
    }
  }
  return out;
}

namespace {

std::pair<LinkDiagram, MoveSite> rewrite_r3(const LinkDiagram& d, const MoveRequest& req) {
  require_oriented(d);
  std::array<int, 3> tri{};
  if (req.triangle.empty()) {
    auto sites = find_r3_sites(d);
    if (sites.empty()) throw SiteNotFound("diagram has no third Reidemeister site");
    tri = sites.front();
  } else {
    if (req.triangle.size() != 3) throw SiteNotFound("R3 site needs three crossings");
    tri = {req.triangle[0], req.triangle[1], req.triangle[2]};
  }
  MoveSite site = r3_site(d, tri);
  std::set<int> ids(site.crossing_ids.begin(), site.crossing_ids.end());
  std::set<int> sides(site.edge_ids.begin(), site.edge_ids.end());

  // per triangle crossing: (in, out) labels of its under and over strands
  struct Strands {
    int u_in, u_out, o_in, o_out;
  };
  std::map<int, Strands> now;
  for (int id : ids) {
    const auto& c = d.crossing(id);
    Strands s{c.edges[0], c.edges[2], 0, 0};
    if (c.sign > 0) {
      s.o_in = c.edges[3];
      s.o_out = c.edges[1];
    } else {
      s.o_in = c.edges[1];
      s.o_out = c.edges[3];
    }
    now[id] = s;
  }
  std::map<int, Strands> next = now;
  // each side runs from its tail crossing to its head crossing; after the
  // move the strand meets the two crossings in the opposite order
  for (int e : sides) {
    EdgeEnd t = *d.tail(e);
    EdgeEnd h = *d.head(e);
    const bool t_under = t.slot % 2 == 0;
    const bool h_under = h.slot % 2 == 0;
    int outer_in = t_under ? now[t.crossing].u_in : now[t.crossing].o_in;
    int outer_out = h_under ? now[h.crossing].u_out : now[h.crossing].o_out;
    if (h_under) {
      next[h.crossing].u_in = outer_in;
      next[h.crossing].u_out = e;
    } else {
      next[h.crossing].o_in = outer_in;
      next[h.crossing].o_out = e;
    }
    if (t_under) {
      next[t.crossing].u_in = e;
      next[t.crossing].u_out = outer_out;
    } else {
      next[t.crossing].o_in = e;
      next[t.crossing].o_out = outer_out;
    }
  }
  std::vector<CrossingData> cs = d.crossings();
  for (int id : ids) {
    const auto& s = next[id];
    cs[static_cast<size_t>(id)] = make_crossing(s.u_in, s.u_out, s.o_in, s.o_out, d.crossing(id).sign);
  }
  LinkDiagram out = LinkDiagram::from_parts(std::move(cs), d.loops());
  for (int c = 0; c < d.num_crossings(); ++c) site.crossing_map[c] = c;
  for (int l : d.edge_labels())
    if (!sides.count(l)) site.edge_map[l] = l;
  return {out, site};
}

}  // namespace

std::pair<LinkDiagram, MoveSite> apply_move(const LinkDiagram& d, const MoveRequest& req) {
  switch (req.kind) {
    case MoveKind::R1Left:
      return insert_r1(d, req);
    case MoveKind::R2:
      return insert_r2(d, req);
    case MoveKind::R3:
      return rewrite_r3(d, req);
  }
  throw SiteNotFound("unknown move kind");
}

MovePair move_pair(const LinkDiagram& d, const MoveRequest& req) {
  auto [out, site] = apply_move(d, req);
  MovePair p;
  if (req.kind == MoveKind::R3) {
    p.site_diagram = d;
    p.partner = out;
    p.partner_site = r3_site(out, {site.crossing_ids[0], site.crossing_ids[1], site.crossing_ids[2]});
    p.partner_site->crossing_map = site.crossing_map;
    p.partner_site->edge_map = site.edge_map;
  } else {
    p.site_diagram = out;
    p.partner = d;
  }
  p.site = std::move(site);
  return p;
}

}  // namespace pkh
