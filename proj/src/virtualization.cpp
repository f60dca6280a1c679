#include "vkr/virtualization.hpp"

#include <algorithm>
#include <set>

namespace vkr {

namespace {

using IdSet = std::set<CrossingId>;

IdSet validated(const IsotopySequence& s, const std::vector<CrossingId>& j) {
  IdSet out;
  for (auto c : j) {
    auto it = s.lifetimes().find(c);
    if (it == s.lifetimes().end()) {
      throw VirtualizationError(VirtualizationError::Kind::unknown_crossing,
                                "crossing " + std::to_string(raw(c)) + " does not occur");
    }
    if (it->second.kind != CrossingKind::classical) {
      throw VirtualizationError(VirtualizationError::Kind::not_classical,
                                "crossing " + std::to_string(raw(c)) + " is not classical");
    }
    if (!it->second.temporary()) {
      throw VirtualizationError(VirtualizationError::Kind::not_temporary,
                                "crossing " + std::to_string(raw(c)) +
                                    " appears in an end diagram; only temporary crossings are supported");
    }
    out.insert(c);
  }
  return out;
}

void check_closure(const IsotopySequence& s, const IdSet& j, SetCheck& out) {
  for (auto x : j) {
    for (auto y : {i_map(s, x), r_map(s, x)}) {
      if (!j.count(y)) {
        out.holds = false;
        out.violations.push_back({0, "not a union of ir classes", {x, y}});
      }
    }
  }
}

std::vector<CrossingId> members_in(const TriangleSite& t, const IdSet& j) {
  std::vector<CrossingId> out;
  for (auto c : t.crossings) {
    if (j.count(c)) out.push_back(c);
  }
  return out;
}

Diagram map_crossings(const Diagram& d, const IdSet& j, bool virtualize) {
  std::vector<Crossing> xs;
  for (const auto& c : d.crossings()) {
    if (!j.count(c.id)) {
      xs.push_back(c);
      continue;
    }
    std::array<bool, 4> in{};
    for (int s = 0; s < 4; ++s) in[s] = c.incoming(s);
    xs.push_back(virtualize ? make_virtual(c.id, c.slots, in) : make_classical(c.id, c.slots, in, 1));
  }
  return Diagram::from_parts(std::move(xs), {d.circles().begin(), d.circles().end()});
}

bool touches(const MoveInstruction& m, const IdSet& j) {
  return std::any_of(m.ids.begin(), m.ids.end(), [&](CrossingId c) { return j.count(c) > 0; });
}

IsotopySequence virtualize_set(const IsotopySequence& s, const IdSet& j) {
  auto transform = [&](const Diagram& d) { return map_crossings(d, j, true); };
  auto rewrite = [&](std::size_t, MoveInstruction m, const Diagram&) {
    if (!touches(m, j)) return m;
    switch (m.kind) {
      case MoveKind::I_plus:
      case MoveKind::I_minus:
      case MoveKind::II_plus:
      case MoveKind::II_minus:
        m.kind = virtualized_kind(m.kind);
        m.sign = 0;
        m.over = 0;
        break;
      case MoveKind::III: {
        std::vector<CrossingId> in_j, out_j;
        for (auto c : m.ids) (j.count(c) ? in_j : out_j).push_back(c);
        if (in_j.size() == 3) {
          m.kind = MoveKind::vIII;
        } else if (in_j.size() == 2) {
          m.kind = MoveKind::v;
          m.ids = {in_j[0], in_j[1], out_j[0]};
        }
        // a single crossing of J leaves a forbidden triangle; the engine rejects it
        break;
      }
      case MoveKind::v:
        m.kind = MoveKind::vIII;
        break;
      default:
        break;
    }
    return m;
  };
  return rebuild_sequence(s, transform, rewrite);
}

IsotopySequence switch_set(const IsotopySequence& s, const IdSet& j) {
  auto transform = [&](const Diagram& d) { return map_crossings(d, j, false); };
  auto rewrite = [&](std::size_t, MoveInstruction m, const Diagram&) {
    if (!touches(m, j)) return m;
    if (m.kind == MoveKind::I_plus) m.sign = -m.sign;
    if (m.kind == MoveKind::II_plus) m.over = 3 - m.over;
    return m;
  };
  return rebuild_sequence(s, transform, rewrite);
}

// Classes of classical crossings whose members are all temporary.
std::vector<IrClass> temporary_classical_classes(const IsotopySequence& s) {
  std::vector<CrossingId> classical;
  for (const auto& [id, life] : s.lifetimes()) {
    if (life.kind == CrossingKind::classical) classical.push_back(id);
  }
  std::vector<IrClass> out;
  for (auto& c : ir_partition(s, classical)) {
    bool temp = std::all_of(c.members.begin(), c.members.end(),
                            [&](CrossingId x) { return s.lifetime(x).temporary(); });
    if (temp) out.push_back(std::move(c));
  }
  return out;
}

std::size_t count_rewritten(const IsotopySequence& a, const IsotopySequence& b) {
  std::size_t n = 0;
  for (std::size_t k = 1; k <= a.step_count(); ++k) {
    if (a.step(k).instruction.kind != b.step(k).instruction.kind) ++n;
  }
  return n;
}

}  // namespace

std::vector<CrossingId> temporary_crossings(const IsotopySequence& s) {
  std::vector<CrossingId> out;
  for (const auto& [id, life] : s.lifetimes()) {
    if (life.temporary()) out.push_back(id);
  }
  return out;
}

std::vector<CrossingId> temporary_classical_crossings(const IsotopySequence& s) {
  std::vector<CrossingId> out;
  for (const auto& [id, life] : s.lifetimes()) {
    if (life.temporary() && life.kind == CrossingKind::classical) out.push_back(id);
  }
  return out;
}

SetCheck check_sequentially_virtualizable(const IsotopySequence& s, const std::vector<CrossingId>& j) {
  IdSet set = validated(s, j);
  SetCheck out;
  check_closure(s, set, out);
  for (std::size_t k = 1; k <= s.step_count(); ++k) {
    const auto& st = s.step(k);
    if (st.instruction.kind != MoveKind::III) continue;
    auto in = members_in(*st.outcome.triangle, set);
    if (in.size() == 1) {
      out.holds = false;
      out.violations.push_back({k, "III move with two crossings outside the set", in});
    }
  }
  if (out.holds && !set.empty()) out.rewritten = virtualize_set(s, set);
  return out;
}

SetCheck check_sequentially_switchable(const IsotopySequence& s, const std::vector<CrossingId>& j) {
  IdSet set = validated(s, j);
  SetCheck out;
  check_closure(s, set, out);
  for (std::size_t k = 1; k <= s.step_count(); ++k) {
    const auto& st = s.step(k);
    if (st.instruction.kind != MoveKind::III) continue;
    const auto& t = *st.outcome.triangle;
    std::array<int, 3> over{};
    for (int c = 0; c < 3; ++c) over[c] = set.count(t.crossings[c]) ? 0 : 1;
    if (classify_triangle(t, over).delta) {
      out.holds = false;
      out.violations.push_back({k, "switching turns the III move into a delta move", members_in(t, set)});
    }
  }
  if (out.holds && !set.empty()) out.rewritten = switch_set(s, set);
  return out;
}

IsotopySequence virtualize_crossings(const IsotopySequence& s, const std::vector<CrossingId>& j) {
  return virtualize_set(s, validated(s, j));
}

IsotopySequence switch_crossings(const IsotopySequence& s, const std::vector<CrossingId>& j) {
  return switch_set(s, validated(s, j));
}

MaxVirtualization maximal_virtualize(const IsotopySequence& s) {
  auto classes = temporary_classical_classes(s);
  std::map<CrossingId, std::size_t> class_of;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (auto x : classes[c].members) class_of[x] = c;
  }
  std::vector<bool> alive(classes.size(), true);
  auto in_union = [&](CrossingId x) {
    auto it = class_of.find(x);
    return it != class_of.end() && alive[it->second];
  };

  bool changed = true;
  while (changed) {
    changed = false;
    std::optional<std::size_t> drop;
    for (std::size_t k = 1; k <= s.step_count(); ++k) {
      const auto& st = s.step(k);
      if (st.instruction.kind != MoveKind::III) continue;
      std::vector<CrossingId> in;
      for (auto c : st.outcome.triangle->crossings) {
        if (in_union(c)) in.push_back(c);
      }
      if (in.size() == 1) {
        std::size_t c = class_of.at(in.front());
        if (!drop || c < *drop) drop = c;
      }
    }
    if (drop) {
      alive[*drop] = false;
      changed = true;
    }
  }

  IdSet chosen;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (alive[c]) chosen.insert(classes[c].members.begin(), classes[c].members.end());
  }
  if (chosen.empty()) return {s, {}, 0};
  auto v = virtualize_set(s, chosen);
  std::size_t rewritten = count_rewritten(s, v);
  return {std::move(v), {chosen.begin(), chosen.end()}, rewritten};
}

SwitchFreeReport switch_free_ends(const IsotopySequence& s, std::uint64_t budget) {
  auto classes = temporary_classical_classes(s);
  SwitchFreeReport rep;
  if (classes.size() >= 63 || (std::uint64_t{1} << classes.size()) - 1 > budget) {
    throw VirtualizationError(VirtualizationError::Kind::budget_exceeded,
                              std::to_string(classes.size()) + " temporary classical ir classes exceed the budget of " +
                                  std::to_string(budget) + " candidate sets");
  }
  std::uint64_t total = (std::uint64_t{1} << classes.size()) - 1;
  for (std::uint64_t mask = 1; mask <= total; ++mask) {
    std::vector<CrossingId> j;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if ((mask >> c) & 1U) j.insert(j.end(), classes[c].members.begin(), classes[c].members.end());
    }
    std::sort(j.begin(), j.end());
    ++rep.candidates;
    if (!check_sequentially_switchable(s, j).holds) continue;
    if (!check_sequentially_virtualizable(s, j).holds) {
      rep.switch_free = false;
      rep.witness = j;
      return rep;
    }
  }
  return rep;
}

}  // namespace vkr
