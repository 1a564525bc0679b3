#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pkh/frobenius.hpp"
#include "pkh/ring.hpp"
#include "pkh/state.hpp"

namespace pkh {

/// A generator in canonical orientation: its negative-marker crossings are
/// ordered by increasing id. Any other ordering is a signed multiple.
using Generator = EnhancedState;

/// Formal Z[s,t]-combination of generators; zero coefficients are dropped.
using Chain = std::map<Generator, PolyST>;

void add_to(Chain& c, const Generator& g, const PolyST& k);
Chain scaled(const Chain& c, const PolyST& k);
void add_chain(Chain& into, const Chain& c, const PolyST& k = PolyST(1));

/// Sorts an ordering of crossings; returns the sorted order and the sign of
/// the sorting permutation. Throws DuplicateCrossing on repeats.
std::pair<std::vector<int>, int> canonical_sign(const std::vector<int>& order);

/// Sign picked up when crossing `a` is appended to the canonical ordering of
/// the negative markers of `m`: (-1)^#{negative c > a}.
int append_sign(MarkerMask m, int num_crossings, int a);

/// delta(g): sum over positive-marker crossings.
Chain differential_of(const ResolutionTable& res, const Generator& g);
/// The single-crossing part delta_a(g); zero when a carries a negative marker.
Chain differential_at(const ResolutionTable& res, const Generator& g, int a);

/// Column-sparse matrix over Z[s,t]. Column entries are sorted by row.
class PolyMatrix {
 public:
  using Column = std::vector<std::pair<int, PolyST>>;

  PolyMatrix() = default;
  PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols), columns_(static_cast<size_t>(cols)) {}
  static PolyMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Column& column(int c) const { return columns_[static_cast<size_t>(c)]; }
  /// Adds k at (r, c).
  void add(int r, int c, const PolyST& k);
  PolyST at(int r, int c) const;
  size_t nonzeros() const;
  bool is_zero() const;
  /// First non-zero entry in column-major order.
  std::optional<std::tuple<int, int, PolyST>> first_nonzero() const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  PolyMatrix operator-() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Column> columns_;
};

enum class GradingScheme { Jones, Bracket };

/// Generators bucketed by homological degree with differentials between
/// consecutive buckets. Position k holds degree `degrees[k]`: Jones degrees
/// i ascend, bracket degrees 2I = sigma descend; the matrices are the same.
struct ChainComplex {
  GradingScheme scheme = GradingScheme::Jones;
  int writhe = 0;
  int num_crossings = 0;
  std::vector<int> degrees;
  std::vector<std::vector<Generator>> generators;
  /// j (Jones) or J (bracket) per generator.
  std::vector<std::vector<int>> secondary;
  /// differentials[k]: position k -> position k + 1.
  std::vector<PolyMatrix> differentials;
  /// Generator -> (position, index within the position).
  std::map<Generator, std::pair<int, int>> index;

  int position_of_degree(int degree) const;
  size_t total_generators() const;
};

ChainComplex build_complex(const LinkDiagram& d, GradingScheme scheme);
ChainComplex build_complex(const ResolutionTable& res, GradingScheme scheme);

struct D2Report {
  bool ok = true;
  /// Source position of the failing composite, its row and column.
  int position = -1;
  int row = -1;
  int col = -1;
  PolyST entry;
};

D2Report check_d2(const ChainComplex& c);

/// JSON summary: generator counts per (degree, secondary), matrix densities,
/// optionally the full matrices.
std::string complex_report_json(const ChainComplex& c, bool with_matrices);

}  // namespace pkh
