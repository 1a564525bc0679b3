#include "pkh/homology.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace pkh {

IntegerMatrix IntegerMatrix::from_dense(const std::vector<std::vector<long>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  IntegerMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != c) throw Error("ragged matrix");
    for (int j = 0; j < c; ++j) m.add(i, j, Integer(rows[static_cast<size_t>(i)][static_cast<size_t>(j)]));
  }
  return m;
}

void IntegerMatrix::add(int r, int c, const Integer& v) {
  if (v == 0) return;
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw Error("IntegerMatrix::add out of range");
  auto& row = data_[static_cast<size_t>(r)];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, int x) { return e.first < x; });
  if (it != row.end() && it->first == c) {
    it->second += v;
    if (it->second == 0) row.erase(it);
  } else {
    row.insert(it, {c, v});
  }
}

Integer IntegerMatrix::at(int r, int c) const {
  const auto& row = data_[static_cast<size_t>(r)];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, int x) { return e.first < x; });
  return (it != row.end() && it->first == c) ? it->second : Integer(0);
}

namespace {

using SparseRow = std::map<int, Integer>;

/// Removes unit pivots by sparse row operations. Each unit pivot contributes
/// an invariant factor 1; what remains has no +-1 entries.
std::vector<SparseRow> eliminate_units(const IntegerMatrix& m, int& rank) {
  std::vector<SparseRow> rows(static_cast<size_t>(m.rows()));
  std::map<int, std::set<int>> col_rows;
  for (int r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) {
      rows[static_cast<size_t>(r)][c] = v;
      col_rows[c].insert(r);
    }
  std::vector<char> alive(rows.size(), 1);
  for (;;) {
    // cheapest unit pivot by Markowitz cost
    int best_r = -1, best_c = -1;
    size_t best_cost = SIZE_MAX;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (!alive[r]) continue;
      for (const auto& [c, v] : rows[r]) {
        if (v != 1 && v != -1) continue;
        size_t cost = (rows[r].size() - 1) * (col_rows[c].size() - 1);
        if (cost < best_cost) {
          best_cost = cost;
          best_r = static_cast<int>(r);
          best_c = c;
          if (cost == 0) break;
        }
      }
      if (best_cost == 0) break;
    }
    if (best_r < 0) break;
    ++rank;
    SparseRow pivot = rows[static_cast<size_t>(best_r)];
    const Integer u = pivot.at(best_c);
    std::vector<int> targets(col_rows[best_c].begin(), col_rows[best_c].end());
    for (int r : targets) {
      if (r == best_r) continue;
      auto& row = rows[static_cast<size_t>(r)];
      const Integer f = row.at(best_c) * u;  // u = +-1, so row -= f * u * pivot
      for (const auto& [c, v] : pivot) {
        Integer nv = row.count(c) ? row[c] - f * v : Integer(-f * v);
        if (nv == 0) {
          row.erase(c);
          col_rows[c].erase(r);
        } else {
          row[c] = nv;
          col_rows[c].insert(r);
        }
      }
    }
    // the pivot column is now clear apart from the pivot; column operations
    // clear the pivot row without touching other rows
    for (const auto& [c, v] : pivot) col_rows[c].erase(best_r);
    rows[static_cast<size_t>(best_r)].clear();
    alive[static_cast<size_t>(best_r)] = 0;
    col_rows.erase(best_c);
  }
  std::vector<SparseRow> rest;
  for (size_t r = 0; r < rows.size(); ++r)
    if (alive[r] && !rows[r].empty()) rest.push_back(std::move(rows[r]));
  return rest;
}

/// Dense Smith normal form by repeated minimal-|entry| pivoting.
std::vector<Integer> dense_snf(std::vector<std::vector<Integer>> a) {
  std::vector<Integer> diag;
  const size_t R = a.size();
  const size_t C = R ? a[0].size() : 0;
  size_t t = 0;
  while (t < R && t < C) {
    // choose the non-zero entry of least absolute value in the trailing block
    size_t pr = R, pc = C;
    for (size_t i = t; i < R; ++i)
      for (size_t j = t; j < C; ++j)
        if (a[i][j] != 0 && (pr == R || abs(a[i][j]) < abs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == R) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      // reduce column t
      for (size_t i = t + 1; i < R; ++i) {
        if (a[i][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (size_t j = t; j < C; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          clean = false;
          if (abs(a[i][t]) < abs(a[t][t])) std::swap(a[i], a[t]);
        }
      }
      // reduce row t
      for (size_t j = t + 1; j < C; ++j) {
        if (a[t][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (size_t i = t; i < R; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          clean = false;
          if (abs(a[t][j]) < abs(a[t][t]))
            for (auto& row : a) std::swap(row[t], row[j]);
        }
      }
      if (!clean) continue;
      // divisibility: the pivot must divide the trailing block
      for (size_t i = t + 1; i < R && clean; ++i)
        for (size_t j = t + 1; j < C; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (size_t k = t; k < C; ++k) a[t][k] += a[i][k];
            clean = false;
            break;
          }
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  return diag;
}

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& m) {
  SmithForm out;
  int units = 0;
  std::vector<SparseRow> rest = eliminate_units(m, units);
  std::set<int> cols;
  for (const auto& r : rest)
    for (const auto& [c, v] : r) cols.insert(c);
  std::map<int, size_t> col_pos;
  for (int c : cols) col_pos[c] = col_pos.size();
  std::vector<std::vector<Integer>> dense(rest.size(), std::vector<Integer>(cols.size(), Integer(0)));
  for (size_t i = 0; i < rest.size(); ++i)
    for (const auto& [c, v] : rest[i]) dense[i][col_pos[c]] = v;
  std::vector<Integer> d = dense_snf(std::move(dense));
  std::sort(d.begin(), d.end());
  out.factors.assign(static_cast<size_t>(units), Integer(1));
  out.factors.insert(out.factors.end(), d.begin(), d.end());
  out.rank = static_cast<int>(out.factors.size());
  return out;
}

IntegerMatrix specialize(const PolyMatrix& m, const Integer& s_val, const Integer& t_val) {
  IntegerMatrix out(m.rows(), m.cols());
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& [r, k] : m.column(c)) out.add(r, c, k.specialize(s_val, t_val));
  return out;
}

namespace {

/// Restricts a specialized differential to given row and column subsets.
IntegerMatrix block(const IntegerMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::map<int, int> rpos, cpos;
  for (size_t i = 0; i < rows.size(); ++i) rpos[rows[i]] = static_cast<int>(i);
  for (size_t i = 0; i < cols.size(); ++i) cpos[cols[i]] = static_cast<int>(i);
  IntegerMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (int r : rows)
    for (const auto& [c, v] : m.row(r)) {
      auto it = cpos.find(c);
      if (it != cpos.end()) out.add(rpos[r], it->second, v);
    }
  return out;
}

}  // namespace

GradedHomology homology_at(const ChainComplex& c, const Integer& s_val, const Integer& t_val) {
  GradedHomology h;
  h.scheme = c.scheme;
  h.s_val = s_val;
  h.t_val = t_val;
  const bool bigraded = s_val == 0 && t_val == 0;
  const size_t P = c.generators.size();
  std::vector<IntegerMatrix> mats;
  for (const auto& d : c.differentials) mats.push_back(specialize(d, s_val, t_val));

  // group generator indices per position by key (secondary grading or 0)
  std::vector<std::map<int, std::vector<int>>> groups(P);
  for (size_t p = 0; p < P; ++p)
    for (size_t i = 0; i < c.generators[p].size(); ++i)
      groups[p][bigraded ? c.secondary[p][i] : 0].push_back(static_cast<int>(i));

  for (size_t p = 0; p < P; ++p) {
    for (const auto& [key, idx] : groups[p]) {
      // outgoing differential: position p -> p+1
      int rank_out = 0;
      if (p + 1 < P) {
        auto it = groups[p + 1].find(key);
        std::vector<int> rows = it == groups[p + 1].end() ? std::vector<int>{} : it->second;
        rank_out = smith_normal_form(block(mats[p], rows, idx)).rank;
      }
      // incoming differential: p-1 -> p gives rank and torsion
      SmithForm in;
      if (p > 0) {
        auto it = groups[p - 1].find(key);
        std::vector<int> cols = it == groups[p - 1].end() ? std::vector<int>{} : it->second;
        in = smith_normal_form(block(mats[p - 1], idx, cols));
      }
      HomologyGroup g;
      g.degree = c.degrees[p];
      if (bigraded) g.secondary = key;
      g.betti = static_cast<int>(idx.size()) - rank_out - in.rank;
      for (const auto& f : in.factors)
        if (f > 1) g.torsion.push_back(f);
      if (g.betti != 0 || !g.torsion.empty()) h.groups.push_back(std::move(g));
    }
  }
  return h;
}

int total_rank(const GradedHomology& h) {
  int n = 0;
  for (const auto& g : h.groups) n += g.betti;
  return n;
}

bool same_homology(const GradedHomology& a, const GradedHomology& b) {
  if (a.groups.size() != b.groups.size()) return false;
  for (size_t i = 0; i < a.groups.size(); ++i) {
    const auto& x = a.groups[i];
    const auto& y = b.groups[i];
    if (x.degree != y.degree || x.secondary != y.secondary || x.betti != y.betti || x.torsion != y.torsion)
      return false;
  }
  return true;
}

std::string homology_json(const GradedHomology& h) {
  using nlohmann::json;
  const bool jones = h.scheme == GradingScheme::Jones;
  json j;
  j["schema_version"] = 1;
  j["parameters"] = {{"s", h.s_val.get_si()}, {"t", h.t_val.get_si()}};
  j["scheme"] = jones ? "jones" : "bracket";
  json groups = json::array();
  for (const auto& g : h.groups) {
    json e;
    e[jones ? "i" : "doubled_I"] = g.degree;
    if (g.secondary) e[jones ? "j" : "J"] = *g.secondary;
    e["betti"] = g.betti;
    json tor = json::array();
    for (const auto& t : g.torsion) tor.push_back(t.get_str());
    e["torsion"] = tor;
    groups.push_back(e);
  }
  j["groups"] = groups;
  j["total_rank"] = total_rank(h);
  return j.dump(2);
}

std::string homology_text(const GradedHomology& h) {
  std::ostringstream os;
  const bool jones = h.scheme == GradingScheme::Jones;
  os << "homology at s=" << h.s_val.get_str() << " t=" << h.t_val.get_str() << '\n';
  for (const auto& g : h.groups) {
    os << "  " << (jones ? "i=" : "2I=") << g.degree;
    if (g.secondary) os << ' ' << (jones ? "j=" : "J=") << *g.secondary;
    os << ":";
    bool first = true;
    if (g.betti > 0) {
      os << " Z";
      if (g.betti > 1) os << '^' << g.betti;
      first = false;
    }
    for (const auto& t : g.torsion) {
      os << (first ? " " : " + ") << "Z/" << t.get_str();
      first = false;
    }
    os << '\n';
  }
  os << "  total rank " << total_rank(h) << '\n';
  return os.str();
}

}  // namespace pkh
