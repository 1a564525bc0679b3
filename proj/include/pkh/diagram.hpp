#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pkh/errors.hpp"

namespace pkh {

/// One crossing of a PD code. `edges` lists the four incident edge labels
/// counterclockwise, starting with the incoming under-strand. The under
/// strand runs slot 0 -> slot 2; the over strand runs 3 -> 1 when the
/// crossing is positive and 1 -> 3 when it is negative.
struct CrossingData {
  int id = 0;
  std::array<int, 4> edges{};
  int sign = 1;
  friend bool operator==(const CrossingData&, const CrossingData&) = default;
};

/// Where an edge meets a crossing.
struct EdgeEnd {
  int crossing = -1;
  int slot = -1;
  friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

/// A face of the projection, listed as the darts traversed with the face on
/// the left. A dart (c, j) means "leave crossing c along slot j".
struct Face {
  std::vector<EdgeEnd> darts;
};

/// PD-coded link diagram. Crossing ids are their positions 0..n-1. Edge
/// labels are arbitrary positive integers; `edge_index` gives the dense
/// renumbering used internally. Crossingless components are stored as loop
/// labels, written `O(e)` in the text format.
class LinkDiagram {
 public:
  LinkDiagram() = default;

  /// Builds and validates a diagram: every edge label must occur exactly
  /// twice among the crossings (or once as a loop), and the projection must
  /// be planar. Crossing ids are reassigned to positions.
  static LinkDiagram from_parts(std::vector<CrossingData> crossings, std::vector<int> loops);

  const std::vector<CrossingData>& crossings() const { return crossings_; }
  const CrossingData& crossing(int id) const { return crossings_.at(static_cast<size_t>(id)); }
  const std::vector<int>& loops() const { return loops_; }
  int num_crossings() const { return static_cast<int>(crossings_.size()); }
  int num_edges() const { return static_cast<int>(labels_.size()); }
  /// Sorted edge labels; position = dense edge index.
  const std::vector<int>& edge_labels() const { return labels_; }
  int edge_index(int label) const;
  bool has_edge(int label) const;
  /// Dense edge indices at the four slots of a crossing.
  const std::array<int, 4>& dense_edges(int id) const { return dense_.at(static_cast<size_t>(id)); }
  bool is_loop(int label) const;
  /// The two crossing ends of an edge (empty for loops), in slot-scan order.
  const std::vector<EdgeEnd>& ends(int label) const;
  int max_label() const { return labels_.empty() ? 0 : labels_.back(); }

  int writhe() const;
  int components() const { return components_; }

  /// Orientation induced by the sign annotations: for each edge label, the
  /// end where the edge leaves a crossing (tail) and where it enters (head).
  /// Empty optional when the annotations are inconsistent.
  std::optional<EdgeEnd> tail(int label) const;
  std::optional<EdgeEnd> head(int label) const;
  bool orientation_consistent() const { return inconsistent_edges_.empty(); }
  /// Edge labels whose two ends disagree about direction under the
  /// annotated signs (both ends incoming or both outgoing).
  const std::vector<int>& inconsistent_edges() const { return inconsistent_edges_; }

  const std::vector<Face>& faces() const { return faces_; }
  /// Index into faces() of the face containing a dart.
  int face_of(EdgeEnd dart) const;

  /// The other end of the edge leaving through `dart`.
  EdgeEnd opposite(EdgeEnd dart) const;

  friend bool operator==(const LinkDiagram& a, const LinkDiagram& b) {
    return a.crossings_ == b.crossings_ && a.loops_ == b.loops_;
  }

 private:
  void build_indices();

  std::vector<CrossingData> crossings_;
  std::vector<int> loops_;
  std::vector<int> labels_;
  std::map<int, int> label_index_;
  std::vector<std::array<int, 4>> dense_;
  std::vector<std::vector<EdgeEnd>> ends_;
  std::vector<std::optional<EdgeEnd>> tails_;
  std::vector<std::optional<EdgeEnd>> heads_;
  std::vector<int> inconsistent_edges_;
  std::vector<Face> faces_;
  std::vector<std::array<int, 4>> dart_face_;
  int components_ = 0;
};

/// Parses whitespace-separated `X(a,b,c,d)+` / `X(a,b,c,d)-` / `O(e)` terms.
/// `#` starts a comment running to the end of the line.
LinkDiagram parse_pd(const std::string& text);
LinkDiagram load_pd_file(const std::string& path);
/// Deterministic text form, crossings in id order, then loops.
std::string render_pd(const LinkDiagram& d);

int writhe(const LinkDiagram& d);

/// Is the crossing positive when its under strand runs 0 -> 2 and the over
/// strand leaves through `over_out_slot`?
int sign_from_over_exit(int over_out_slot);
/// PD tuple of a crossing given the labels on its four strands.
CrossingData make_crossing(int under_in, int under_out, int over_in, int over_out, int sign);

// --- transformations -------------------------------------------------------

/// Smooths one crossing along the given marker (+1 joins slots (0,1),(2,3);
/// -1 joins (0,3),(1,2)). Signs of other crossings are kept as annotations.
LinkDiagram smooth(const LinkDiagram& d, int crossing_id, int marker);
/// Mirror image: reverses the rotational order at every crossing and flips
/// every sign.
LinkDiagram mirror(const LinkDiagram& d);
/// Removes crossings letting both strands pass straight through; this is
/// the combinatorial core of R1 and R2 removal.
LinkDiagram remove_crossings(const LinkDiagram& d, const std::vector<int>& ids);
/// Removes a one-crossing kink. Throws IllegalSite if `id` is not a kink.
LinkDiagram remove_r1(const LinkDiagram& d, int id);
/// Removes a bigon formed by two crossings with the same strand over at
/// both. Throws IllegalSite otherwise.
LinkDiagram remove_r2(const LinkDiagram& d, int a, int b);
/// Same crossing signs and the same PD incidence up to relabeling of
/// crossings and edges.
bool isomorphic(const LinkDiagram& a, const LinkDiagram& b);

/// Closure of a braid word; generator k > 0 is sigma_k, k < 0 its inverse.
LinkDiagram braid_closure(int strands, const std::vector<int>& word);

// --- Reidemeister moves ----------------------------------------------------

enum class MoveKind { R1Left, R2, R3 };

std::string to_string(MoveKind k);
MoveKind move_kind_from_string(const std::string& s);

/// The local data of one move. For R1 and R2 the site lives in the diagram
/// produced by insertion and the correspondence maps it back to the input;
/// for R3 the site lives in the input and the correspondence maps it to the
/// rewritten diagram.
struct MoveSite {
  MoveKind kind = MoveKind::R1Left;
  /// a (R1); a, b (R2); a, b, c (R3).
  std::vector<int> crossing_ids;
  /// R1: the small loop edge; R2: the two bigon edges; R3: triangle sides.
  std::vector<int> edge_ids;
  /// Crossing ids of the site diagram -> crossing ids of the partner.
  std::map<int, int> crossing_map;
  /// Edge labels of the site diagram -> edge labels of the partner, for
  /// every edge outside the disk.
  std::map<int, int> edge_map;
};

struct MoveRequest {
  MoveKind kind = MoveKind::R1Left;
  /// R1/R2: the edge to act on.
  int edge = 0;
  /// R2: the second edge (0 = same as `edge`).
  int edge2 = 0;
  /// R1: 0 places the kink with its under-pass first, 1 with its over-pass
  /// first. R2: 0 pokes into the face left of `edge`, 1 into the right face.
  int side = 0;
  /// R2: whether the finger pushed from `edge` passes over `edge2`.
  bool first_over = true;
  /// R3: crossing ids of the triangle (any order); empty = first site found.
  std::vector<int> triangle;
};

/// Result of applying a move. `site_diagram` carries the local picture
/// (kink, bigon, or the R3 triangle before the move), `partner` is the
/// other side of the move.
struct MovePair {
  LinkDiagram site_diagram;
  LinkDiagram partner;
  MoveSite site;
  /// R3 only: the site detected on the rewritten diagram.
  std::optional<MoveSite> partner_site;
};

/// Applies a move. For R1/R2 the returned diagram is the one with the new
/// crossings; for R3 it is the rewritten diagram.
std::pair<LinkDiagram, MoveSite> apply_move(const LinkDiagram& d, const MoveRequest& req);
MovePair move_pair(const LinkDiagram& d, const MoveRequest& req);

/// Triangular faces that are legal R3 sites, each as its (a, b, c).
std::vector<std::array<int, 3>> find_r3_sites(const LinkDiagram& d);
/// Classifies a triangle into (a, b, c); throws IllegalSite if the triangle
/// is not in the supported configuration.
MoveSite r3_site(const LinkDiagram& d, std::array<int, 3> triangle);

}  // namespace pkh
