#pragma once

// Invariant factors of an integer matrix from the gcds of its k x k minors:
// d_k = g_k / g_{k-1}. Exponential, but independent of any elimination.

#include <algorithm>
#include <vector>

#include "pkh/ring.hpp"

namespace pkh::testing {

using Dense = std::vector<std::vector<Integer>>;

inline Integer det(Dense m) {
  // Bareiss fraction-free elimination.
  const size_t n = m.size();
  Integer prev = 1;
  int sign = 1;
  for (size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Integer> minor_gcd_factors(const Dense& a) {
  const int r = static_cast<int>(a.size());
  const int c = r ? static_cast<int>(a[0].size()) : 0;
  std::vector<Integer> out;
  Integer prev = 1;
  for (int k = 1; k <= std::min(r, c); ++k) {
    std::vector<std::vector<int>> rows, cols;
    std::vector<int> cur;
    subsets(r, k, 0, cur, rows);
    subsets(c, k, 0, cur, cols);
    Integer g = 0;
    for (const auto& rs : rows)
      for (const auto& cs : cols) {
        Dense sub(static_cast<size_t>(k), std::vector<Integer>(static_cast<size_t>(k)));
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) sub[static_cast<size_t>(i)][static_cast<size_t>(j)] = a[static_cast<size_t>(rs[static_cast<size_t>(i)])][static_cast<size_t>(cs[static_cast<size_t>(j)])];
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(abs(det(sub))).get_mpz_t());
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

}  // namespace pkh::testing
