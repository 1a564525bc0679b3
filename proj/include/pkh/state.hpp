#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pkh/diagram.hpp"

namespace pkh {

/// Bit c set = positive marker (A-smoothing) at crossing c.
using MarkerMask = std::uint32_t;
/// Bit k set = circle k carries the sign +.
using SignMask = std::uint32_t;

/// Hard limit imposed by the bitmask representation.
inline constexpr int kMaxCrossings = 24;

/// Marker assignment, one entry per crossing, each +1 or -1.
struct State {
  std::vector<int> markers;
};

/// Circles of a resolved state. Every edge lies on exactly one circle;
/// circles are numbered by the smallest dense edge index they contain.
struct CircleArrangement {
  int circle_count = 0;
  std::vector<int> edge_to_circle;
  /// Smallest dense edge index on each circle.
  std::vector<int> representative;
};

struct EnhancedState {
  MarkerMask markers = 0;
  SignMask signs = 0;
  friend bool operator==(const EnhancedState&, const EnhancedState&) = default;
  friend auto operator<=>(const EnhancedState&, const EnhancedState&) = default;
};

struct Gradings {
  int sigma = 0;
  int tau = 0;
  int i = 0;
  int j = 0;
  int doubled_I = 0;
  int J = 0;
};

MarkerMask to_mask(const LinkDiagram& d, const State& s);
State to_state(const LinkDiagram& d, MarkerMask m);

/// Throws MarkerMismatch if the state does not cover exactly the crossings.
CircleArrangement resolve(const LinkDiagram& d, const State& s);
CircleArrangement resolve(const LinkDiagram& d, MarkerMask m);

/// Every (state, sign assignment) pair, states in increasing mask order.
std::vector<EnhancedState> enumerate_enhanced(const LinkDiagram& d);

int positive_marker_count(MarkerMask m, int n);

Gradings gradings(const LinkDiagram& d, const EnhancedState& s);
/// Gradings from already-known counts: n crossings, writhe w, circle count.
Gradings gradings_from(int n, int w, MarkerMask m, SignMask signs, int circles);

/// `markers:+-+ signs:+-`.
std::string render_state(const LinkDiagram& d, const EnhancedState& s);

/// Resolutions of every state of a diagram, computed once.
class ResolutionTable {
 public:
  explicit ResolutionTable(const LinkDiagram& d);
  const LinkDiagram& diagram() const { return d_; }
  const CircleArrangement& at(MarkerMask m) const { return table_[m]; }
  int circle_of(MarkerMask m, int edge_label) const;
  /// Circle through the edge at a crossing slot.
  int circle_at(MarkerMask m, int crossing, int slot) const;

 private:
  LinkDiagram d_;
  std::vector<CircleArrangement> table_;
};

}  // namespace pkh
