#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vkr/generator.hpp"
#include "vkr/realization.hpp"

namespace vkr {

enum class SwitchFree { yes, no, undecided };
std::string_view to_string(SwitchFree s);

struct TrialOutcome {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t moves = 0;
  std::vector<CrossingId> virtualized;  // by maximal virtualization
  SwitchFree switch_free = SwitchFree::undecided;
  std::size_t classes = 0;
  bool realizable = true;
  FailureType type = FailureType::realizable;
  /// Unrealizable, maximally virtualized and switch-free: would contradict the conjecture.
  bool witness = false;
  std::optional<IsotopySequence> sequence;  // the maximally virtualized sequence
};

/// Runs maximal virtualization, the switch-free check and the realization
/// search on one sequence. Switch-freeness and maximality can only be
/// certified when both end diagrams are crossing-free, since only temporary
/// crossings are examined; otherwise switch_free is undecided.
TrialOutcome analyse_trial(const IsotopySequence& s, std::uint64_t switch_budget);

struct SearchReport {
  std::size_t trials = 0;
  std::size_t generated = 0;  // trials whose generator run succeeded
  std::size_t unrealizable = 0;
  std::size_t type_i = 0, type_ii = 0, type_iii = 0;
  std::vector<TrialOutcome> findings;  // unrealizable trials, in trial order
};

/// Trial t uses generator seed p.seed + t.
SearchReport search_counterexamples(const GeneratorParams& p, std::size_t trials, std::uint64_t switch_budget = 4096);

}  // namespace vkr
