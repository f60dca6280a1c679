#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vkr/sequence.hpp"

namespace vkr {

class VirtualizationError : public std::runtime_error {
 public:
  enum class Kind { unknown_crossing, not_classical, not_temporary, budget_exceeded };
  VirtualizationError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Crossings absent from both K_1 and K_n.
std::vector<CrossingId> temporary_crossings(const IsotopySequence& s);
std::vector<CrossingId> temporary_classical_crossings(const IsotopySequence& s);

struct SetViolation {
  std::size_t step = 0;  // 0 for violations not tied to a move
  std::string what;
  std::vector<CrossingId> ids;
};

struct SetCheck {
  bool holds = true;
  std::vector<SetViolation> violations;
  std::optional<IsotopySequence> rewritten;  // the virtualized or switched sequence when `holds`
};

/// J must consist of temporary classical crossings (else VirtualizationError).
/// Holds iff J is closed under i and r and no III move has exactly one
/// crossing in J; the virtualized sequence is then rebuilt through the engine.
SetCheck check_sequentially_virtualizable(const IsotopySequence& s, const std::vector<CrossingId>& j);

/// Holds iff J is closed under i and r and every III move stays a valid III
/// after switching the crossings of J; the switched sequence is then rebuilt.
SetCheck check_sequentially_switchable(const IsotopySequence& s, const std::vector<CrossingId>& j);

/// Rebuilt sequences; throw SequenceError when a step becomes illegal.
IsotopySequence virtualize_crossings(const IsotopySequence& s, const std::vector<CrossingId>& j);
IsotopySequence switch_crossings(const IsotopySequence& s, const std::vector<CrossingId>& j);

struct MaxVirtualization {
  IsotopySequence sequence;
  std::vector<CrossingId> virtualized;
  std::size_t steps_rewritten = 0;
};

/// Virtualizes the largest union of temporary classical ir classes meeting
/// every III move in zero or at least two crossings.
MaxVirtualization maximal_virtualize(const IsotopySequence& s);

struct SwitchFreeReport {
  bool switch_free = true;
  std::uint64_t candidates = 0;
  std::vector<CrossingId> witness;  // switchable but not virtualizable
};

/// Checks every nonempty union of temporary classical ir classes. Throws
/// VirtualizationError(budget_exceeded) when there are more than `budget`.
SwitchFreeReport switch_free_ends(const IsotopySequence& s, std::uint64_t budget);

}  // namespace vkr
