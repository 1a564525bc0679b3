#include "pkh/state.hpp"

#include <bit>
#include <numeric>

namespace pkh {

namespace {

void check_size(const LinkDiagram& d) {
  if (d.num_crossings() > kMaxCrossings)
    throw ValidationError("diagram has " + std::to_string(d.num_crossings()) + " crossings; at most " +
                          std::to_string(kMaxCrossings) + " are supported");
}

}  // namespace

MarkerMask to_mask(const LinkDiagram& d, const State& s) {
  check_size(d);
  if (static_cast<int>(s.markers.size()) != d.num_crossings())
    throw MarkerMismatch("state has " + std::to_string(s.markers.size()) + " markers but the diagram has " +
                         std::to_string(d.num_crossings()) + " crossings");
  MarkerMask m = 0;
  for (size_t c = 0; c < s.markers.size(); ++c) {
    if (s.markers[c] == 1)
      m |= MarkerMask{1} << c;
    else if (s.markers[c] != -1)
      throw MarkerMismatch("marker values must be +1 or -1");
  }
  return m;
}

State to_state(const LinkDiagram& d, MarkerMask m) {
  State s;
  for (int c = 0; c < d.num_crossings(); ++c) s.markers.push_back((m >> c) & 1U ? 1 : -1);
  return s;
}

CircleArrangement resolve(const LinkDiagram& d, const State& s) { return resolve(d, to_mask(d, s)); }

CircleArrangement resolve(const LinkDiagram& d, MarkerMask m) {
  check_size(d);
  const int ne = d.num_edges();
  std::vector<int> parent(static_cast<size_t>(ne));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  auto join = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  };
  for (const auto& c : d.crossings()) {
    const auto& e = d.dense_edges(c.id);
    if ((m >> c.id) & 1U) {
      join(e[0], e[1]);
      join(e[2], e[3]);
    } else {
      join(e[0], e[3]);
      join(e[1], e[2]);
    }
  }
  CircleArrangement out;
  out.edge_to_circle.assign(static_cast<size_t>(ne), -1);
  std::vector<int> root_to_circle(static_cast<size_t>(ne), -1);
  for (int e = 0; e < ne; ++e) {
    int r = find(e);
    if (root_to_circle[static_cast<size_t>(r)] < 0) {
      root_to_circle[static_cast<size_t>(r)] = out.circle_count++;
      out.representative.push_back(e);
    }
    out.edge_to_circle[static_cast<size_t>(e)] = root_to_circle[static_cast<size_t>(r)];
  }
  return out;
}

std::vector<EnhancedState> enumerate_enhanced(const LinkDiagram& d) {
  check_size(d);
  std::vector<EnhancedState> out;
  const MarkerMask states = MarkerMask{1} << d.num_crossings();
  for (MarkerMask m = 0; m < states; ++m) {
    const int k = resolve(d, m).circle_count;
    for (SignMask s = 0; s < (SignMask{1} << k); ++s) out.push_back({m, s});
  }
  return out;
}

int positive_marker_count(MarkerMask m, int n) {
  MarkerMask all = n >= 32 ? ~MarkerMask{0} : ((MarkerMask{1} << n) - 1);
  return std::popcount(m & all);
}

Gradings gradings_from(int n, int w, MarkerMask m, SignMask signs, int circles) {
  Gradings g;
  const int pos = positive_marker_count(m, n);
  g.sigma = pos - (n - pos);
  const int plus = std::popcount(signs);
  g.tau = (circles - plus) - plus;
  g.i = (w - g.sigma) / 2;
  g.j = w + g.i + g.tau;
  g.doubled_I = g.sigma;
  g.J = g.sigma - 2 * g.tau;
  return g;
}

Gradings gradings(const LinkDiagram& d, const EnhancedState& s) {
  return gradings_from(d.num_crossings(), d.writhe(), s.markers, s.signs, resolve(d, s.markers).circle_count);
}

std::string render_state(const LinkDiagram& d, const EnhancedState& s) {
  std::string out = "markers:";
  for (int c = 0; c < d.num_crossings(); ++c) out += (s.markers >> c) & 1U ? '+' : '-';
  out += " signs:";
  const int k = resolve(d, s.markers).circle_count;
  for (int i = 0; i < k; ++i) out += (s.signs >> i) & 1U ? '+' : '-';
  return out;
}

ResolutionTable::ResolutionTable(const LinkDiagram& d) : d_(d) {
  check_size(d);
  const MarkerMask states = MarkerMask{1} << d.num_crossings();
  table_.reserve(states);
  for (MarkerMask m = 0; m < states; ++m) table_.push_back(resolve(d, m));
}

int ResolutionTable::circle_of(MarkerMask m, int edge_label) const {
  return table_[m].edge_to_circle[static_cast<size_t>(d_.edge_index(edge_label))];
}

int ResolutionTable::circle_at(MarkerMask m, int crossing, int slot) const {
  return table_[m].edge_to_circle[static_cast<size_t>(d_.dense_edges(crossing)[static_cast<size_t>(slot)])];
}

}  // namespace pkh
