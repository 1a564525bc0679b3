#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pkh/complex.hpp"
#include "pkh/ring.hpp"

namespace pkh {

/// Sparse integer matrix, stored by rows.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows)) {}
  static IntegerMatrix from_dense(const std::vector<std::vector<long>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  void add(int r, int c, const Integer& v);
  Integer at(int r, int c) const;
  const std::vector<std::pair<int, Integer>>& row(int r) const { return data_[static_cast<size_t>(r)]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::vector<std::pair<int, Integer>>> data_;  // sorted by column
};

struct SmithForm {
  /// Invariant factors d1 | d2 | ... (all positive), one per unit of rank.
  std::vector<Integer> factors;
  int rank = 0;
};

SmithForm smith_normal_form(const IntegerMatrix& m);

/// Specializes s, t in a polynomial matrix.
IntegerMatrix specialize(const PolyMatrix& m, const Integer& s_val, const Integer& t_val);

struct HomologyGroup {
  int degree = 0;
  /// Present when the computation was split by the secondary grading.
  std::optional<int> secondary;
  int betti = 0;
  std::vector<Integer> torsion;
};

struct GradedHomology {
  GradingScheme scheme = GradingScheme::Jones;
  Integer s_val;
  Integer t_val;
  /// Ordered by degree position, then secondary grading. Zero groups are
  /// omitted.
  std::vector<HomologyGroup> groups;
};

/// Homology at a specialization. At (0,0) the differential preserves the
/// secondary grading and the result is bigraded; elsewhere it is graded by
/// degree only.
GradedHomology homology_at(const ChainComplex& c, const Integer& s_val, const Integer& t_val);

int total_rank(const GradedHomology& h);

bool same_homology(const GradedHomology& a, const GradedHomology& b);

std::string homology_json(const GradedHomology& h);
std::string homology_text(const GradedHomology& h);

}  // namespace pkh
