#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vkr/ids.hpp"

namespace vkr {

/// A crossing of a virtual link diagram.
///
/// Slots hold arc labels in counterclockwise order. Opposite slots (0,2) and
/// (1,3) carry one strand each; a strand through slots (k, k+2) is called
/// pass k. Canonical slot layout:
///  - classical: slot 0 is the incoming under-strand, so pass 0 is the under
///    pass and pass 1 the over pass. A positive crossing has its over-strand
///    entering at slot 1, a negative one at slot 3.
///  - virtual: slots 0 and 1 are the incoming ends.
///
/// A virtual crossing realized with sign s behaves like a classical crossing
/// of sign s with the same slot layout: pass 1 is over when s = +1, pass 0 is
/// over when s = -1.
struct Crossing {
  CrossingId id{};
  CrossingKind kind = CrossingKind::classical;
  int sign = 0;  // +1 / -1 for classical, 0 for virtual
  std::array<ArcLabel, 4> slots{};

  bool is_virtual() const { return kind == CrossingKind::virtual_crossing; }
  bool incoming(int slot) const;
  /// Pass that is over when this crossing carries `realized_sign`.
  static int over_pass(int realized_sign) { return realized_sign > 0 ? 1 : 0; }

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Builds a crossing from arcs listed counterclockwise starting anywhere,
/// with in-flags, and rotates it into canonical layout. For classical
/// crossings `under_pass_slot` names any slot of the under strand.
Crossing make_classical(CrossingId id, std::array<ArcLabel, 4> ccw, std::array<bool, 4> in,
                        int under_pass_slot);
Crossing make_virtual(CrossingId id, std::array<ArcLabel, 4> ccw, std::array<bool, 4> in);

/// A slot of a crossing; also identifies the dart leaving the crossing there.
struct SlotRef {
  CrossingId crossing{};
  int slot = 0;
  friend auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

struct ArcEnds {
  SlotRef tail;  // outgoing slot
  SlotRef head;  // incoming slot
};

/// One side of an arc, relative to its orientation.
struct ArcSide {
  ArcLabel arc{};
  Side side = Side::left;
  friend auto operator<=>(const ArcSide&, const ArcSide&) = default;
};

struct Face {
  std::vector<ArcSide> sides;         // cyclic boundary order
  std::vector<SlotRef> leaving_slots; // darts of the boundary; empty for circle faces
  std::vector<CrossingId> corners;    // crossing at the start of each dart
};

struct FaceStructure {
  std::vector<Face> faces;
  int genus = 0;
  std::map<ArcSide, int> face_of;  // index into faces
};

/// A crossing visit while following a strand.
struct Visit {
  CrossingId crossing{};
  int pass = 0;     // 0 or 1
  int in_slot = 0;
  friend bool operator==(const Visit&, const Visit&) = default;
};

struct GaussLetter {
  CrossingId crossing{};
  bool over = false;
  int sign = 0;
  friend auto operator<=>(const GaussLetter&, const GaussLetter&) = default;
};

/// Per-component cyclic words of classical crossing visits.
struct GaussCode {
  std::vector<std::vector<GaussLetter>> words;

  /// Rotates each word to its least rotation and sorts the words.
  GaussCode canonical() const;
  bool equivalent(const GaussCode& other) const { return canonical().words == other.canonical().words; }
};

/// Immutable planar combinatorial map of a virtual link diagram.
class Diagram {
 public:
  Diagram() = default;

  /// Validates every diagram invariant; throws DiagramError.
  static Diagram from_parts(std::vector<Crossing> crossings, std::vector<ArcLabel> circles);

  std::span<const Crossing> crossings() const { return crossings_; }
  std::span<const ArcLabel> circles() const { return circles_; }
  const Crossing* find(CrossingId id) const;
  const Crossing& crossing(CrossingId id) const;
  bool has_arc(ArcLabel a) const;
  bool is_circle(ArcLabel a) const;
  /// Ends of a non-circle arc.
  const ArcEnds& ends(ArcLabel a) const;
  ArcLabel arc_at(SlotRef s) const;
  /// Slot at the other end of the arc sitting in `s`.
  SlotRef opposite_end(SlotRef s) const;
  std::vector<ArcLabel> arcs() const;
  int max_arc_label() const;
  std::size_t classical_count() const;
  std::size_t virtual_count() const;
  int component_count() const { return components_; }
  /// Number of connected pieces of the drawn graph (circles count as pieces).
  int graph_pieces() const { return pieces_; }
  int piece_of(ArcLabel a) const;

  FaceStructure faces() const;
  /// Follows the strand from `start` until returning to it.
  std::vector<Visit> traverse(ArcLabel start) const;
  GaussCode gauss_code() const;

  friend bool operator==(const Diagram&, const Diagram&);

 private:
  std::vector<Crossing> crossings_;  // sorted by id
  std::vector<ArcLabel> circles_;    // sorted
  std::map<ArcLabel, ArcEnds> arcs_;
  std::map<ArcLabel, int> piece_;
  int components_ = 0;
  int pieces_ = 0;
};

/// Parses a diagram clause: whitespace-separated atoms O(k), Xp(a,b,c,d),
/// Xm(a,b,c,d), V(a,b,c,d). Crossings take ids 1, 2, ... in order of
/// appearance unless an explicit `@id` suffix is given.
Diagram parse_diagram(std::string_view text);
std::string format_diagram(const Diagram& d);

/// Arc labels relabelled so that corresponding arcs of `to` are found for
/// every arc of `from`; crossings are matched by id and slot. Returns nullopt
/// when the two diagrams are not identical up to arc relabelling.
std::optional<std::map<ArcLabel, ArcLabel>> match_arcs(const Diagram& from, const Diagram& to);

}  // namespace vkr
