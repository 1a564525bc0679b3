#include "pkh/complex.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "json.hpp"

namespace pkh {

void add_to(Chain& c, const Generator& g, const PolyST& k) {
  if (k.is_zero()) return;
  auto [it, inserted] = c.try_emplace(g, k);
  if (!inserted) {
    it->second += k;
    if (it->second.is_zero()) c.erase(it);
  }
}

Chain scaled(const Chain& c, const PolyST& k) {
  Chain out;
  if (k.is_zero()) return out;
  for (const auto& [g, v] : c) add_to(out, g, v * k);
  return out;
}

void add_chain(Chain& into, const Chain& c, const PolyST& k) {
  for (const auto& [g, v] : c) add_to(into, g, v * k);
}

std::pair<std::vector<int>, int> canonical_sign(const std::vector<int>& order) {
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DuplicateCrossing("crossing listed twice in a negative-marker ordering");
  // parity via inversion count
  int inversions = 0;
  for (size_t i = 0; i < order.size(); ++i)
    for (size_t j = i + 1; j < order.size(); ++j)
      if (order[i] > order[j]) ++inversions;
  return {sorted, inversions % 2 == 0 ? 1 : -1};
}

int append_sign(MarkerMask m, int num_crossings, int a) {
  MarkerMask all = (MarkerMask{1} << num_crossings) - 1;
  MarkerMask above = all & ~((MarkerMask{2} << a) - 1);
  return std::popcount(~m & above) % 2 == 0 ? 1 : -1;
}

Chain differential_at(const ResolutionTable& res, const Generator& g, int a) {
  Chain out;
  if (!((g.markers >> a) & 1U)) return out;
  const LinkDiagram& d = res.diagram();
  const MarkerMask m2 = g.markers & ~(MarkerMask{1} << a);
  const CircleArrangement& before = res.at(g.markers);
  const CircleArrangement& after = res.at(m2);
  const auto& slots = d.dense_edges(a);
  const int c0 = before.edge_to_circle[static_cast<size_t>(slots[0])];
  const int c2 = before.edge_to_circle[static_cast<size_t>(slots[2])];
  const PolyST sign(append_sign(g.markers, d.num_crossings(), a));

  // circles away from the crossing keep their signs
  SignMask base = 0;
  for (int k = 0; k < before.circle_count; ++k) {
    if (k == c0 || k == c2) continue;
    if ((g.signs >> k) & 1U) base |= SignMask{1} << after.edge_to_circle[static_cast<size_t>(before.representative[static_cast<size_t>(k)])];
  }
  const Sign p = sign_of_bit((g.signs >> c0) & 1U);
  if (c0 != c2) {
    const Sign q = sign_of_bit((g.signs >> c2) & 1U);
    const int merged = after.edge_to_circle[static_cast<size_t>(slots[0])];
    const SignSum& r = merge(p, q);
    for (Sign s : {Sign::Minus, Sign::Plus}) {
      if (r[s].is_zero()) continue;
      SignMask sm = base | (s == Sign::Plus ? SignMask{1} << merged : 0);
      add_to(out, {m2, sm}, r[s] * sign);
    }
  } else {
    const int first = after.edge_to_circle[static_cast<size_t>(slots[0])];
    const int second = after.edge_to_circle[static_cast<size_t>(slots[1])];
    const SignPairSum& r = split(p);
    for (Sign s1 : {Sign::Minus, Sign::Plus})
      for (Sign s2 : {Sign::Minus, Sign::Plus}) {
        const PolyST& k = r.at(s1, s2);
        if (k.is_zero()) continue;
        SignMask sm = base;
        if (s1 == Sign::Plus) sm |= SignMask{1} << first;
        if (s2 == Sign::Plus) sm |= SignMask{1} << second;
        add_to(out, {m2, sm}, k * sign);
      }
  }
  return out;
}

Chain differential_of(const ResolutionTable& res, const Generator& g) {
  Chain out;
  for (int a = 0; a < res.diagram().num_crossings(); ++a)
    if ((g.markers >> a) & 1U) add_chain(out, differential_at(res, g, a));
  return out;
}

// ---------------------------------------------------------------------------
// PolyMatrix

PolyMatrix PolyMatrix::identity(int n) {
  PolyMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.columns_[static_cast<size_t>(i)].push_back({i, PolyST(1)});
  return m;
}

void PolyMatrix::add(int r, int c, const PolyST& k) {
  if (k.is_zero()) return;
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw Error("PolyMatrix::add out of range");
  auto& col = columns_[static_cast<size_t>(c)];
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, int x) { return e.first < x; });
  if (it != col.end() && it->first == r) {
    it->second += k;
    if (it->second.is_zero()) col.erase(it);
  } else {
    col.insert(it, {r, k});
  }
}

PolyST PolyMatrix::at(int r, int c) const {
  const auto& col = columns_[static_cast<size_t>(c)];
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, int x) { return e.first < x; });
  if (it != col.end() && it->first == r) return it->second;
  return PolyST();
}

size_t PolyMatrix::nonzeros() const {
  size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

bool PolyMatrix::is_zero() const { return nonzeros() == 0; }

std::optional<std::tuple<int, int, PolyST>> PolyMatrix::first_nonzero() const {
  for (size_t c = 0; c < columns_.size(); ++c)
    if (!columns_[c].empty()) return std::make_tuple(columns_[c].front().first, static_cast<int>(c), columns_[c].front().second);
  return std::nullopt;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_)
    throw Error("PolyMatrix product shape mismatch: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                " times " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  PolyMatrix out(a.rows_, b.cols_);
  for (int j = 0; j < b.cols_; ++j) {
    std::map<int, PolyST> acc;
    for (const auto& [l, v] : b.columns_[static_cast<size_t>(j)])
      for (const auto& [r, u] : a.columns_[static_cast<size_t>(l)]) acc[r] += u * v;
    auto& col = out.columns_[static_cast<size_t>(j)];
    for (auto& [r, k] : acc)
      if (!k.is_zero()) col.push_back({r, std::move(k)});
  }
  return out;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("PolyMatrix sum shape mismatch");
  PolyMatrix out = a;
  for (int j = 0; j < b.cols_; ++j)
    for (const auto& [r, k] : b.columns_[static_cast<size_t>(j)]) out.add(r, j, k);
  return out;
}

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix out = *this;
  for (auto& col : out.columns_)
    for (auto& e : col) e.second = -e.second;
  return out;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) { return a + (-b); }

// ---------------------------------------------------------------------------
// complexes

int ChainComplex::position_of_degree(int degree) const {
  auto it = std::find(degrees.begin(), degrees.end(), degree);
  return it == degrees.end() ? -1 : static_cast<int>(it - degrees.begin());
}

size_t ChainComplex::total_generators() const {
  size_t n = 0;
  for (const auto& g : generators) n += g.size();
  return n;
}

ChainComplex build_complex(const LinkDiagram& d, GradingScheme scheme) {
  ResolutionTable res(d);
  return build_complex(res, scheme);
}

ChainComplex build_complex(const ResolutionTable& res, GradingScheme scheme) {
  const LinkDiagram& d = res.diagram();
  const int n = d.num_crossings();
  const int w = d.writhe();
  ChainComplex c;
  c.scheme = scheme;
  c.writhe = w;
  c.num_crossings = n;
  // position = number of negative markers, i.e. i - (w - n)/2
  for (int k = 0; k <= n; ++k) {
    const int i = (w - n) / 2 + k;
    c.degrees.push_back(scheme == GradingScheme::Jones ? i : w - 2 * i);
  }
  c.generators.assign(static_cast<size_t>(n + 1), {});
  c.secondary.assign(static_cast<size_t>(n + 1), {});
  const MarkerMask states = MarkerMask{1} << n;
  for (MarkerMask m = 0; m < states; ++m) {
    const int k = res.at(m).circle_count;
    const size_t pos = static_cast<size_t>(n - positive_marker_count(m, n));
    for (SignMask s = 0; s < (SignMask{1} << k); ++s) c.generators[pos].push_back({m, s});
  }
  for (size_t pos = 0; pos < c.generators.size(); ++pos) {
    auto& gens = c.generators[pos];
    std::sort(gens.begin(), gens.end());
    for (size_t idx = 0; idx < gens.size(); ++idx) {
      const auto& g = gens[idx];
      Gradings gr = gradings_from(n, w, g.markers, g.signs, res.at(g.markers).circle_count);
      c.secondary[pos].push_back(scheme == GradingScheme::Jones ? gr.j : gr.J);
      c.index[g] = {static_cast<int>(pos), static_cast<int>(idx)};
    }
  }
  for (size_t pos = 0; pos + 1 < c.generators.size(); ++pos) {
    PolyMatrix mat(static_cast<int>(c.generators[pos + 1].size()), static_cast<int>(c.generators[pos].size()));
    for (size_t col = 0; col < c.generators[pos].size(); ++col)
      for (const auto& [g, k] : differential_of(res, c.generators[pos][col]))
        mat.add(c.index.at(g).second, static_cast<int>(col), k);
    c.differentials.push_back(std::move(mat));
  }
  return c;
}

D2Report check_d2(const ChainComplex& c) {
  D2Report r;
  for (size_t pos = 0; pos + 2 < c.generators.size(); ++pos) {
    PolyMatrix comp = c.differentials[pos + 1] * c.differentials[pos];
    if (auto nz = comp.first_nonzero()) {
      r.ok = false;
      r.position = static_cast<int>(pos);
      r.row = std::get<0>(*nz);
      r.col = std::get<1>(*nz);
      r.entry = std::get<2>(*nz);
      return r;
    }
  }
  return r;
}

std::string complex_report_json(const ChainComplex& c, bool with_matrices) {
  using nlohmann::json;
  const bool jones = c.scheme == GradingScheme::Jones;
  json j;
  j["scheme"] = jones ? "jones" : "bracket";
  j["writhe"] = c.writhe;
  j["crossings"] = c.num_crossings;
  j["total_generators"] = c.total_generators();
  json counts = json::array();
  for (size_t pos = 0; pos < c.generators.size(); ++pos) {
    std::map<int, int> by_secondary;
    for (int s : c.secondary[pos]) ++by_secondary[s];
    for (const auto& [s, k] : by_secondary)
      counts.push_back({{jones ? "i" : "doubled_I", c.degrees[pos]}, {jones ? "j" : "J", s}, {"count", k}});
  }
  j["generator_counts"] = counts;
  json mats = json::array();
  for (size_t pos = 0; pos < c.differentials.size(); ++pos) {
    const auto& m = c.differentials[pos];
    json e{{"from", c.degrees[pos]},
           {"to", c.degrees[pos + 1]},
           {"rows", m.rows()},
           {"cols", m.cols()},
           {"nonzeros", m.nonzeros()}};
    const double cells = static_cast<double>(m.rows()) * static_cast<double>(m.cols());
    e["density"] = cells > 0 ? static_cast<double>(m.nonzeros()) / cells : 0.0;
    if (with_matrices) {
      json entries = json::array();
      for (int col = 0; col < m.cols(); ++col)
        for (const auto& [row, k] : m.column(col)) {
          json terms = json::array();
          for (const auto& t : k.terms()) terms.push_back({t.deg_s, t.deg_t, t.coeff.get_str()});
          entries.push_back({{"row", row}, {"col", col}, {"coeff", terms}});
        }
      e["entries"] = entries;
    }
    mats.push_back(e);
  }
  j["differentials"] = mats;
  return j.dump(2);
}

}  // namespace pkh
