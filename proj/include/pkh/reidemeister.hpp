#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pkh/complex.hpp"
#include "pkh/diagram.hpp"
#include "pkh/homology.hpp"
#include "pkh/state.hpp"

namespace pkh {

/// The Jones-scheme complex of a diagram with every generator given one
/// global index (positions concatenated in order), plus the differential as
/// a single square matrix.
class HostComplex {
 public:
  explicit HostComplex(const LinkDiagram& d);

  const LinkDiagram& diagram() const { return res_.diagram(); }
  const ResolutionTable& resolutions() const { return res_; }
  const ChainComplex& complex() const { return complex_; }
  int size() const { return static_cast<int>(flat_.size()); }
  const Generator& generator(int global) const { return flat_[static_cast<size_t>(global)]; }
  int global_index(const Generator& g) const;
  /// Homological degree i of a generator.
  int degree_of(int global) const;
  /// (position, index within position) of a global index.
  std::pair<int, int> local_of(int global) const;
  const PolyMatrix& delta() const { return delta_; }
  /// Writes a chain into column `col` of a matrix with this host's rows.
  void add_column(PolyMatrix& m, int col, const Chain& c, const PolyST& k = PolyST(1)) const;

 private:
  ResolutionTable res_;
  ChainComplex complex_;
  std::vector<Generator> flat_;
  std::vector<int> offset_;
  std::vector<int> position_;
  PolyMatrix delta_;
};

/// Which local type a generator has at a move site, with the signs of its
/// distinguished local circles.
struct GeneratorClass {
  std::string label;
  std::vector<Sign> local_signs;
  /// Whether the class indexes a basis element of the subcomplex C
  /// (as opposed to the contractible summand).
  bool lead = false;
};

GeneratorClass classify(const MoveSite& site, const HostComplex& host, const Generator& g);

/// Deliberate corruptions used as negative controls.
enum class Corruption { None, DropIsomSign, DropHomotopyTerm };

/// The maps of one side of a move: the retraction onto the subcomplex C
/// spanned by rho applied to the lead generators, its inclusion, and the
/// homotopy. For a diagram without a site (the crossing-poorer side of R1
/// and R2), C is everything and h = 0.
struct SideMaps {
  /// Global indices of the lead generators; lead k is coordinate k of C.
  std::vector<int> leads;
  /// rho as a map C(D) -> C(D).
  PolyMatrix rho_full;
  /// rho in lead coordinates, C(D) -> C.
  PolyMatrix rho;
  /// C -> C(D); column k is rho_full applied to lead k.
  PolyMatrix inj;
  /// Homological degree -1.
  PolyMatrix h;
  /// Class label per global generator (empty for trivial sides).
  std::vector<std::string> labels;
};

SideMaps trivial_side(const HostComplex& host);

/// The full data of one move: both sides and the isomorphism between the
/// two subcomplexes, in lead coordinates.
struct ChainMapSet {
  MoveKind kind = MoveKind::R1Left;
  SideMaps site;
  SideMaps partner;
  /// C(site side) -> C(partner side), lead coordinates.
  PolyMatrix isom;
};

ChainMapSet build_r1_maps(const HostComplex& d, const HostComplex& d_prime, const MoveSite& site,
                          Corruption corruption = Corruption::None);
ChainMapSet build_r2_maps(const HostComplex& d, const HostComplex& d_prime, const MoveSite& site,
                          Corruption corruption = Corruption::None);
/// `partner_site` is the site detected on the rewritten diagram.
ChainMapSet build_r3_maps(const HostComplex& d, const HostComplex& d_prime, const MoveSite& site,
                          const MoveSite& partner_site, Corruption corruption = Corruption::None);

struct Violation {
  std::string check;
  /// Homological degree of the source generator.
  int degree = 0;
  /// Row and column within their degrees.
  int row = 0;
  int col = 0;
  PolyST entry;
};

struct CheckResult {
  bool ok = true;
  std::optional<Violation> violation;
};

/// delta_target * f - f * delta_source == 0.
CheckResult verify_chain_map(const PolyMatrix& f, const HostComplex& source, const HostComplex& target);
/// delta h + h delta + inj rho - id == 0.
CheckResult verify_homotopy_identity(const SideMaps& maps, const HostComplex& host);
/// rho inj = id, inj rho = rho_full, and both summands closed under delta.
CheckResult verify_retraction(const SideMaps& maps, const HostComplex& host);
/// isom is a signed permutation commuting with the induced differentials.
CheckResult verify_isom(const ChainMapSet& maps, const HostComplex& d, const HostComplex& d_prime);

struct HomologyMatch {
  long s = 0;
  long t = 0;
  bool ok = false;
};

struct MoveReport {
  MoveKind move = MoveKind::R1Left;
  std::string site_diagram;
  std::string partner_diagram;
  bool identity_residual_zero = false;
  bool chain_map_ok = false;
  bool retraction_ok = false;
  bool isom_ok = false;
  std::vector<HomologyMatch> homology_match;
  std::optional<Violation> first_violation;
  /// Generator counts per class label on the site diagram.
  std::map<std::string, int> class_counts;

  bool ok() const;
};

/// The specializations compared for invariance.
const std::vector<std::pair<long, long>>& invariance_grid();

/// Applies the move, builds every map, and runs every check.
MoveReport verify_move(const LinkDiagram& d, const MoveRequest& req, Corruption corruption = Corruption::None);
std::string move_report_json(const MoveReport& r);
std::string move_report_text(const MoveReport& r);

}  // namespace pkh
