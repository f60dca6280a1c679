#include "vkr/generator.hpp"

#include <limits>

namespace vkr {

std::map<MoveKind, unsigned> GeneratorParams::default_weights() {
  return {
      {MoveKind::I_plus, 1},   {MoveKind::I_minus, 2},  {MoveKind::II_plus, 2},  {MoveKind::II_minus, 3},
      {MoveKind::III, 4},      {MoveKind::vI_plus, 2},  {MoveKind::vI_minus, 3}, {MoveKind::vII_plus, 3},
      {MoveKind::vII_minus, 3}, {MoveKind::vIII, 4},    {MoveKind::v, 6},
  };
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

namespace {

struct Picker {
  std::mt19937_64& rng;

  // Draws a kind by weight among the kinds present, then a site uniformly.
  std::optional<MoveInstruction> pick(const std::vector<MoveInstruction>& moves,
                                      const std::map<MoveKind, unsigned>& weights) {
    std::map<MoveKind, std::vector<const MoveInstruction*>> by_kind;
    for (const auto& m : moves) {
      auto it = weights.find(m.kind);
      if (it != weights.end() && it->second > 0) by_kind[m.kind].push_back(&m);
    }
    std::uint64_t total = 0;
    for (const auto& [k, list] : by_kind) total += weights.at(k);
    if (total == 0) return std::nullopt;
    std::uint64_t r = uniform_below(rng, total);
    for (const auto& [k, list] : by_kind) {
      unsigned w = weights.at(k);
      if (r < w) return *list[uniform_below(rng, list.size())];
      r -= w;
    }
    return std::nullopt;
  }
};

}  // namespace

IsotopySequence random_sequence(const GeneratorParams& p) {
  std::mt19937_64 rng(p.seed);
  Picker picker{rng};
  Diagram d = parse_diagram("O(1)");
  std::vector<MoveInstruction> moves;
  int next_id = 1;

  auto step = [&](const std::map<MoveKind, unsigned>& weights) {
    auto all = legal_moves(d, CrossingId{next_id});
    std::vector<MoveInstruction> allowed;
    for (auto& m : all) {
      std::size_t added = m.kind == MoveKind::II_plus || m.kind == MoveKind::vII_plus ? 2
                          : m.kind == MoveKind::I_plus || m.kind == MoveKind::vI_plus  ? 1
                                                                                       : 0;
      if (d.crossings().size() + added > p.max_crossings) continue;
      allowed.push_back(std::move(m));
    }
    auto m = picker.pick(allowed, weights);
    if (!m) return false;
    d = apply_move(d, *m).after;
    if (is_creation(m->kind)) next_id += is_pair_move(m->kind) ? 2 : 1;
    moves.push_back(std::move(*m));
    return true;
  };

  for (std::size_t k = 0; k < p.max_moves; ++k) {
    if (!step(p.weights)) break;
  }
  if (p.require_classical_ends) {
    std::map<MoveKind, unsigned> cleanup{
        {MoveKind::vI_minus, 10}, {MoveKind::vII_minus, 10}, {MoveKind::vIII, 2}, {MoveKind::v, 2},
        {MoveKind::I_minus, 1},   {MoveKind::II_minus, 1},   {MoveKind::III, 1},
    };
    std::size_t used = 0;
    while (d.virtual_count() > 0) {
      if (used == p.cleanup_budget || !step(cleanup)) {
        throw GeneratorError("seed " + std::to_string(p.seed) + ": virtual crossings remain after cleanup budget");
      }
      ++used;
    }
  }
  return IsotopySequence::build(parse_diagram("O(1)"), moves);
}

}  // namespace vkr
