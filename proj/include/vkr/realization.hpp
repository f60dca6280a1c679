#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "vkr/sequence.hpp"

namespace vkr {

/// Sign per virtual crossing; may be partial.
using SignAssignment = std::map<CrossingId, int>;

/// The two alternating assignments along the ir diagram of `c`. The first
/// gives the smallest member +1.
std::pair<SignAssignment, SignAssignment> class_realizations(const IrClass& c);

enum class FailKind { gamma, delta };
std::string_view to_string(FailKind k);

struct Finding {
  std::size_t step = 0;
  MoveKind move = MoveKind::vII_plus;
  FailKind fail = FailKind::gamma;
  std::vector<CrossingId> ids;
};

struct ValidityReport {
  std::vector<Finding> findings;
  bool valid() const { return findings.empty(); }
};

/// Replays `s` with every virtual crossing realized by `a`, classifying each
/// vII bigon and each vIII/v triangle. Throws std::invalid_argument if `a`
/// misses a virtual crossing.
ValidityReport replay_realized(const IsotopySequence& s, const SignAssignment& a);

/// Candidate `index` of the 2^n class-respecting assignments: class j (in
/// partition order) takes its second realization iff bit n-1-j is set.
SignAssignment class_respecting_assignment(const std::vector<IrClass>& classes, std::uint64_t index);
std::vector<SignAssignment> enumerate_realizations(const IsotopySequence& s);

/// `d` with the assigned virtual crossings turned classical.
Diagram realize_diagram(const Diagram& d, const SignAssignment& a);

/// The classical sequence obtained by realizing every virtual crossing. Throws
/// SequenceError at the first step that is not a legal classical move.
IsotopySequence realized_sequence(const IsotopySequence& s, const SignAssignment& a);

enum class ClassStatus { free, determined, contradictory };
std::string_view to_string(ClassStatus s);

struct ClassDetermination {
  ClassStatus status = ClassStatus::free;
  int choice = 0;                    // 0 or 1: which of class_realizations when determined
  std::vector<std::size_t> steps;    // triangle moves that fixed or contradicted the choice
};

struct SiteConflict {
  std::size_t step = 0;
  std::vector<std::size_t> classes;  // indices into the partition
};

struct DeterminationReport {
  std::vector<IrClass> classes;
  std::vector<ClassDetermination> per_class;
  std::vector<SiteConflict> conflicts;
};

/// Propagates forced class choices through vIII and v moves: a triangle whose
/// virtual crossings leave one class undetermined fixes that class when only
/// one of its two realizations makes the triangle valid.
DeterminationReport determine_classes(const IsotopySequence& s);

enum class FailureType { realizable, i, ii, iii };
std::string_view to_string(FailureType t);

struct FailureClassification {
  FailureType type = FailureType::realizable;
  std::vector<std::size_t> classes;  // witnessing class indices
  std::vector<std::size_t> steps;    // witnessing steps
  bool manual_review = false;        // set for the residual type iii
};

struct SearchResult {
  std::vector<IrClass> classes;
  std::uint64_t candidates = 0;
  std::optional<SignAssignment> found;
  std::uint64_t found_index = 0;
  FailureClassification failure;
};

/// First class-respecting assignment (enumeration order) that replays valid.
SearchResult search_realization(const IsotopySequence& s);

}  // namespace vkr
