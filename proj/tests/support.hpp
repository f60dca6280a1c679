#pragma once

// Helpers shared by the unit tests and the acceptance runner: random move
// walks and brute-force oracles that do not reuse the code under test.

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vkr/realization.hpp"
#include "vkr/seqfile.hpp"

namespace vkr::testing {

std::string fixture_path(const std::string& name);
IsotopySequence load_fixture(const std::string& name);

struct WalkParams {
  Diagram start = parse_diagram("O(1)");
  std::size_t length = 10;
  std::size_t max_crossings = 6;
  /// Moves rejected by the filter are not drawn.
  std::function<bool(const MoveInstruction&)> filter;
  /// When set, a legal move of this kind is drawn with probability 1/2.
  std::optional<MoveKind> favour;
};

/// A uniformly drawn walk of legal moves from p.start. Stops early when no move passes the filter.
IsotopySequence random_walk(std::mt19937_64& rng, const WalkParams& p);

/// O(1) with two classical kinks, drawn at random.
Diagram random_two_kinks(std::mt19937_64& rng);

/// All 32 diagrams obtained from O(1) by two I+ moves (ids 1 and 2).
std::vector<Diagram> all_two_kinks();

/// Calls `visit` on every sequence from `start` whose move kinds follow `skeleton`.
void for_each_skeleton_sequence(const Diagram& start, const std::vector<MoveKind>& skeleton,
                                const std::function<void(const IsotopySequence&)>& visit);

/// Move kinds of the FIG8 fixture: vI+, vII+, v, v, v, v, vII-, vI-.
std::vector<MoveKind> fig8_skeleton();

/// Every total assignment of signs to `ids`; assignment k gives ids[i] the sign -1 iff bit i of k is set.
std::vector<SignAssignment> all_assignments(const std::vector<CrossingId>& ids);

/// True iff the realized sequence is a legal classical sequence, checked by
/// replaying every step through the move engine.
bool engine_accepts(const IsotopySequence& s, const SignAssignment& a);

/// Some total assignment passes engine_accepts.
bool brute_force_realizable(const IsotopySequence& s);

/// Total order iff the three strands win 0, 1 and 2 of their pairwise crossings.
bool is_total_order(const std::array<OverUnder, 3>& rel);

enum class ShapeOracle { two_loops, path, even_cycle, odd_cycle, other };

/// Shape of the graph on `members` with an edge x - i(x) and an edge x - r(x),
/// fixed points drawn as loops.
ShapeOracle shape_of(const IsotopySequence& s, const std::vector<CrossingId>& members);
/// Number of members fixed by i plus members fixed by r.
int fixed_points(const IsotopySequence& s, const std::vector<CrossingId>& members);

/// Cyclic word with the letters of `drop` removed.
std::vector<GaussLetter> without(const std::vector<GaussLetter>& w, const std::vector<CrossingId>& drop);
/// Equal up to cyclic rotation.
bool same_cycle(const std::vector<GaussLetter>& a, const std::vector<GaussLetter>& b);

/// Empty when the Gauss codes before and after a move differ exactly as the
/// move requires: virtual moves leave them unchanged up to rotation; I adds or
/// drops one chord whose two letters are adjacent; II adds or drops two chords
/// of opposite sign whose over letters are adjacent and whose under letters
/// are adjacent; III keeps the letters. Otherwise a description of the mismatch.
std::string chord_pattern_violation(const Diagram& before, const MoveInstruction& m, const MoveOutcome& out);

}  // namespace vkr::testing
