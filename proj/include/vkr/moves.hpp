#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vkr/diagram.hpp"

namespace vkr {

enum class MoveKind { I_plus, I_minus, II_plus, II_minus, III, vI_plus, vI_minus, vII_plus, vII_minus, vIII, v };

std::string_view to_string(MoveKind k);
std::optional<MoveKind> parse_move_kind(std::string_view s);
bool is_virtual_move(MoveKind k);
bool is_creation(MoveKind k);
bool is_removal(MoveKind k);
bool is_triangle_move(MoveKind k);
bool is_loop_move(MoveKind k);   // I, vI
bool is_pair_move(MoveKind k);   // II, vII
/// The move undoing `k` (III, vIII and v are their own inverses).
MoveKind inverse_kind(MoveKind k);
/// I -> vI, II -> vII; other kinds unchanged.
MoveKind virtualized_kind(MoveKind k);

struct MoveInstruction {
  MoveKind kind = MoveKind::vI_plus;
  std::vector<ArcLabel> arcs;     // I+/vI+: one arc, II+/vII+: two arcs
  std::vector<CrossingId> ids;    // fresh ids for creations, referenced ids otherwise
  std::optional<Side> side;       // I+/vI+: side of the arc receiving the loop
  std::optional<std::pair<Side, Side>> sides;  // II+/vII+: sides of arcs[0], arcs[1] on the shared face
  int sign = 0;                   // I+
  int over = 0;                   // II+: 1 or 2, the strand passing over
  std::optional<ArcLabel> edge;   // triangle moves: an edge of the intended face

  friend bool operator==(const MoveInstruction&, const MoveInstruction&) = default;
};

/// "move <kind> key=value ..." (see README for the grammar).
MoveInstruction parse_move(std::string_view line);
std::string format_move(const MoveInstruction& m);

class MoveError : public std::runtime_error {
 public:
  enum class Kind {
    bad_instruction,
    site_not_found,
    pattern_mismatch,
    forbidden_move,
    would_be_delta,
    would_be_gamma,
    unknown_id,
    id_in_use,
  };
  MoveError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

std::string_view to_string(MoveError::Kind k);

struct ProvenanceEvent {
  std::vector<CrossingId> created;
  std::vector<CrossingId> removed;
  bool paired = false;
};

/// Three crossings bounding a triangular face. Strand k carries edge k, the
/// face edge from crossings[k] to crossings[(k+1)%3].
struct TriangleSite {
  std::array<CrossingId, 3> crossings{};
  std::array<std::array<int, 2>, 3> pass_strand{};  // [crossing][pass] -> strand
  std::array<ArcLabel, 3> edges{};

  int index_of(CrossingId c) const;
};

struct BigonSite {
  std::array<CrossingId, 2> crossings{};
};

struct TriangleVerdict {
  bool delta = false;
  std::array<int, 3> order{};  // strands from top to bottom when valid
};

/// Over/under data at one crossing of a triangle: strand `over` passes above `under`.
struct OverUnder {
  int over = 0;
  int under = 0;
};

/// Total order (valid III) or 3-cycle (delta). Throws MoveError(site_not_found)
/// unless every pair of the three strands meets exactly once.
TriangleVerdict classify_triangle(const std::array<OverUnder, 3>& relation);
/// Classification of `site` with the given over pass (0 or 1) at each crossing.
TriangleVerdict classify_triangle(const TriangleSite& site, const std::array<int, 3>& over_pass);

enum class BigonVerdict { valid_ii, gamma };
BigonVerdict classify_bigon(int sign1, int sign2);

struct MoveOutcome {
  Diagram after;
  ProvenanceEvent event;
  /// Arcs of the pre-move diagram lying outside the rewritten disk, mapped to
  /// the arc carrying the same point afterwards. Arcs inside the disk are absent.
  std::map<ArcLabel, ArcLabel> forward;
  std::optional<TriangleSite> triangle;
  std::optional<BigonSite> bigon;
  std::array<ArcLabel, 3> new_triangle_edges{};
};

MoveOutcome apply_move(const Diagram& d, const MoveInstruction& m);

/// Instruction undoing `m`, expressed in the labels of `out.after`.
MoveInstruction inverse_instruction(const Diagram& before, const MoveInstruction& m, const MoveOutcome& out);

/// Triangular faces whose corners are exactly `ids`.
std::vector<Face> triangle_faces(const Diagram& d, const std::array<CrossingId, 3>& ids);
/// Bigon face bounded by `a` and `b`, if any.
std::optional<Face> bigon_face(const Diagram& d, CrossingId a, CrossingId b);

struct LegalMoveOptions {
  bool classical = true;
  bool virtual_moves = true;
};

/// Every legal instruction at `d`, creating crossings with ids next_id, next_id+1.
std::vector<MoveInstruction> legal_moves(const Diagram& d, CrossingId next_id, LegalMoveOptions opts = {});

}  // namespace vkr
