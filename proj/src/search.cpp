#include "vkr/search.hpp"

#include "vkr/virtualization.hpp"

namespace vkr {

std::string_view to_string(SwitchFree s) {
  switch (s) {
    case SwitchFree::yes: return "yes";
    case SwitchFree::no: return "no";
    case SwitchFree::undecided: return "undecided";
  }
  return "?";
}

TrialOutcome analyse_trial(const IsotopySequence& s, std::uint64_t switch_budget) {
  TrialOutcome t;
  t.moves = s.step_count();
  auto mv = maximal_virtualize(s);
  t.virtualized = mv.virtualized;
  const auto& seq = mv.sequence;
  bool bare_ends = seq.initial().crossings().empty() && seq.final_diagram().crossings().empty();
  if (bare_ends) {
    try {
      t.switch_free = switch_free_ends(seq, switch_budget).switch_free ? SwitchFree::yes : SwitchFree::no;
    } catch (const VirtualizationError&) {
      t.switch_free = SwitchFree::undecided;
    }
  }
  auto r = search_realization(seq);
  t.classes = r.classes.size();
  t.realizable = r.found.has_value();
  t.type = r.failure.type;
  t.witness = !t.realizable && t.switch_free == SwitchFree::yes;
  t.sequence = seq;
  return t;
}

SearchReport search_counterexamples(const GeneratorParams& p, std::size_t trials, std::uint64_t switch_budget) {
  SearchReport rep;
  rep.trials = trials;
  for (std::size_t k = 0; k < trials; ++k) {
    GeneratorParams q = p;
    q.seed = p.seed + k;
    std::optional<IsotopySequence> s;
    try {
      s = random_sequence(q);
    } catch (const GeneratorError&) {
      continue;
    }
    ++rep.generated;
    auto t = analyse_trial(*s, switch_budget);
    t.trial = k;
    t.seed = q.seed;
    if (t.realizable) continue;
    ++rep.unrealizable;
    if (t.type == FailureType::i) ++rep.type_i;
    if (t.type == FailureType::ii) ++rep.type_ii;
    if (t.type == FailureType::iii) ++rep.type_iii;
    rep.findings.push_back(std::move(t));
  }
  return rep;
}

}  // namespace vkr
