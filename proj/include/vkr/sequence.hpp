#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vkr/moves.hpp"

namespace vkr {

/// One move of a sequence together with what it did.
struct SequenceStep {
  MoveInstruction instruction;
  MoveOutcome outcome;  // outcome.after is left empty; see IsotopySequence::diagram
};

struct Lifetime {
  CrossingKind kind = CrossingKind::classical;
  int sign = 0;
  std::size_t introduced = 0;  // creating step, 0 when present in the initial diagram
  std::size_t removed = 0;     // removing step, 0 when present in the final diagram
  std::optional<CrossingId> intro_partner;
  std::optional<CrossingId> removal_partner;

  bool temporary() const { return introduced != 0 && removed != 0; }
};

/// Failure while building a sequence; `step` is 1-based.
class SequenceError : public std::runtime_error {
 public:
  SequenceError(std::size_t step, std::optional<MoveError::Kind> kind, const std::string& what)
      : std::runtime_error(what), step_(step), kind_(kind) {}
  std::size_t step() const noexcept { return step_; }
  std::optional<MoveError::Kind> move_error() const noexcept { return kind_; }

 private:
  std::size_t step_;
  std::optional<MoveError::Kind> kind_;
};

/// Diagrams K_1 ... K_n joined by n-1 moves. Steps and diagrams are 1-based:
/// step k rewrites K_k into K_{k+1}.
class IsotopySequence {
 public:
  static IsotopySequence build(Diagram initial, const std::vector<MoveInstruction>& moves);

  std::size_t step_count() const { return steps_.size(); }
  std::size_t diagram_count() const { return diagrams_.size(); }
  const Diagram& diagram(std::size_t k) const { return diagrams_.at(k - 1); }
  const SequenceStep& step(std::size_t k) const { return steps_.at(k - 1); }
  const Diagram& initial() const { return diagrams_.front(); }
  const Diagram& final_diagram() const { return diagrams_.back(); }
  std::vector<MoveInstruction> instructions() const;

  const std::map<CrossingId, Lifetime>& lifetimes() const { return lives_; }
  /// Throws SequenceError when `c` never occurs in the sequence.
  const Lifetime& lifetime(CrossingId c) const;
  std::vector<CrossingId> crossing_ids() const;
  std::vector<CrossingId> virtual_crossings() const;

 private:
  std::vector<Diagram> diagrams_;
  std::vector<SequenceStep> steps_;
  std::map<CrossingId, Lifetime> lives_;
};

/// Introduction partner: the other crossing of the creating II/vII move, else x.
CrossingId i_map(const IsotopySequence& s, CrossingId x);
/// Removal partner: the other crossing of the removing II/vII move, else x.
CrossingId r_map(const IsotopySequence& s, CrossingId x);

enum class IrShape { two_loops, path, even_cycle };
std::string_view to_string(IrShape s);

struct IrClass {
  std::vector<CrossingId> members;  // sorted
  /// Members in order along the ir diagram: from an end for paths, from the
  /// smallest member (first step along i) for cycles.
  std::vector<CrossingId> walk;
  IrShape shape = IrShape::two_loops;
  int loop_events = 0;  // members fixed by i plus members fixed by r
};

/// Classes of x ~ i(x), x ~ r(x) over `x_set` (default: every virtual
/// crossing), sorted by smallest member. Throws SequenceError when `x_set` is
/// not closed under i and r.
std::vector<IrClass> ir_partition(const IsotopySequence& s, const std::optional<std::vector<CrossingId>>& x_set = {});

/// The same isotopy traversed backwards, starting from the final diagram.
IsotopySequence reverse_sequence(const IsotopySequence& s);

/// Replays `s` with rewritten instructions. `transform` maps each original
/// diagram to what the rebuilt one must equal up to arc labels; `rewrite`
/// receives the instruction with arcs already translated to the rebuilt
/// labels. Throws SequenceError if a rebuilt step fails or diverges.
using DiagramTransform = std::function<Diagram(const Diagram&)>;
using InstructionRewrite =
    std::function<MoveInstruction(std::size_t step, MoveInstruction translated, const Diagram& rebuilt_before)>;
IsotopySequence rebuild_sequence(const IsotopySequence& s, const DiagramTransform& transform,
                                 const InstructionRewrite& rewrite);

/// Arc labels of `m` passed through `labels`.
MoveInstruction translate_arcs(MoveInstruction m, const std::map<ArcLabel, ArcLabel>& labels);

}  // namespace vkr
