#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "vkr/sequence.hpp"

namespace vkr {

class GeneratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeneratorParams {
  std::uint64_t seed = 1;
  std::size_t max_moves = 10;
  std::size_t max_crossings = 6;
  bool require_classical_ends = false;
  /// Extra moves allowed after max_moves to remove the remaining virtual crossings.
  std::size_t cleanup_budget = 30;
  /// Relative weight of each move kind; a kind is drawn first, then one of its legal sites.
  std::map<MoveKind, unsigned> weights = default_weights();

  static std::map<MoveKind, unsigned> default_weights();
};

/// Uniform integer in [0, n) by rejection sampling; n > 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

/// Random valid sequence starting from O(1). Same params give the same
/// sequence. Throws GeneratorError when classical ends are required but the
/// cleanup budget runs out.
IsotopySequence random_sequence(const GeneratorParams& p);

}  // namespace vkr
