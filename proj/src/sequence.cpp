#include "vkr/sequence.hpp"

#include <algorithm>
#include <set>

#include "vkr/union_find.hpp"

namespace vkr {

IsotopySequence IsotopySequence::build(Diagram initial, const std::vector<MoveInstruction>& moves) {
  IsotopySequence s;
  for (const auto& c : initial.crossings()) {
    Lifetime life;
    life.kind = c.kind;
    life.sign = c.sign;
    s.lives_[c.id] = life;
  }
  s.diagrams_.push_back(std::move(initial));

  for (std::size_t k = 1; k <= moves.size(); ++k) {
    const auto& m = moves[k - 1];
    if (is_creation(m.kind)) {
      for (auto id : m.ids) {
        if (s.lives_.count(id)) {
          throw SequenceError(k, MoveError::Kind::id_in_use,
                              "step " + std::to_string(k) + ": crossing id " + std::to_string(raw(id)) +
                                  " was already used in this sequence");
        }
      }
    }
    MoveOutcome out;
    try {
      out = apply_move(s.diagrams_.back(), m);
    } catch (const MoveError& e) {
      throw SequenceError(k, e.kind(), "step " + std::to_string(k) + ": " + std::string(to_string(e.kind())) + ": " +
                                           e.what());
    } catch (const DiagramError& e) {
      throw SequenceError(k, std::nullopt, "step " + std::to_string(k) + ": " + e.what());
    }
    const auto& ev = out.event;
    for (auto id : ev.created) {
      const auto& c = out.after.crossing(id);
      Lifetime life;
      life.kind = c.kind;
      life.sign = c.sign;
      life.introduced = k;
      if (ev.paired) life.intro_partner = id == ev.created[0] ? ev.created[1] : ev.created[0];
      s.lives_[id] = life;
    }
    for (auto id : ev.removed) {
      auto& life = s.lives_.at(id);
      life.removed = k;
      if (ev.paired) life.removal_partner = id == ev.removed[0] ? ev.removed[1] : ev.removed[0];
    }
    s.diagrams_.push_back(std::move(out.after));
    out.after = Diagram{};
    s.steps_.push_back({m, std::move(out)});
  }
  return s;
}

std::vector<MoveInstruction> IsotopySequence::instructions() const {
  std::vector<MoveInstruction> out;
  for (const auto& st : steps_) out.push_back(st.instruction);
  return out;
}

const Lifetime& IsotopySequence::lifetime(CrossingId c) const {
  auto it = lives_.find(c);
  if (it == lives_.end()) throw SequenceError(0, std::nullopt, "crossing " + std::to_string(raw(c)) + " is not tracked");
  return it->second;
}

std::vector<CrossingId> IsotopySequence::crossing_ids() const {
  std::vector<CrossingId> out;
  for (const auto& [id, life] : lives_) out.push_back(id);
  return out;
}

std::vector<CrossingId> IsotopySequence::virtual_crossings() const {
  std::vector<CrossingId> out;
  for (const auto& [id, life] : lives_) {
    if (life.kind == CrossingKind::virtual_crossing) out.push_back(id);
  }
  return out;
}

CrossingId i_map(const IsotopySequence& s, CrossingId x) { return s.lifetime(x).intro_partner.value_or(x); }

CrossingId r_map(const IsotopySequence& s, CrossingId x) { return s.lifetime(x).removal_partner.value_or(x); }

std::string_view to_string(IrShape s) {
  switch (s) {
    case IrShape::two_loops: return "two-loops";
    case IrShape::path: return "path";
    case IrShape::even_cycle: return "even-cycle";
  }
  return "?";
}

std::vector<IrClass> ir_partition(const IsotopySequence& s, const std::optional<std::vector<CrossingId>>& x_set) {
  std::vector<CrossingId> xs = x_set ? *x_set : s.virtual_crossings();
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::map<CrossingId, int> index;
  for (std::size_t k = 0; k < xs.size(); ++k) index[xs[k]] = static_cast<int>(k);

  UnionFind uf(xs.size());
  for (auto x : xs) {
    for (auto y : {i_map(s, x), r_map(s, x)}) {
      auto it = index.find(y);
      if (it == index.end()) {
        throw SequenceError(0, std::nullopt,
                            "crossing set not closed under i and r: " + std::to_string(raw(x)) + " is paired with " +
                                std::to_string(raw(y)));
      }
      uf.unite(index[x], it->second);
    }
  }

  std::map<int, IrClass> by_root;
  std::vector<int> root_order;
  for (auto x : xs) {
    int root = uf.find(index[x]);
    if (!by_root.count(root)) root_order.push_back(root);
    by_root[root].members.push_back(x);
  }

  std::vector<IrClass> out;
  for (int root : root_order) {
    IrClass c = std::move(by_root[root]);
    std::vector<CrossingId> ends;
    for (auto x : c.members) {
      bool fi = i_map(s, x) == x;
      bool fr = r_map(s, x) == x;
      c.loop_events += (fi ? 1 : 0) + (fr ? 1 : 0);
      if (fi || fr) ends.push_back(x);
    }
    if (c.members.size() == 1) {
      c.shape = IrShape::two_loops;
      c.walk = c.members;
    } else if (ends.empty()) {
      c.shape = IrShape::even_cycle;
      CrossingId start = c.members.front();
      CrossingId cur = start;
      bool use_i = true;
      do {
        c.walk.push_back(cur);
        cur = use_i ? i_map(s, cur) : r_map(s, cur);
        use_i = !use_i;
      } while (cur != start);
    } else {
      c.shape = IrShape::path;
      CrossingId cur = ends.front();
      bool use_i = i_map(s, cur) != cur;
      while (true) {
        c.walk.push_back(cur);
        CrossingId next = use_i ? i_map(s, cur) : r_map(s, cur);
        if (next == cur) break;
        cur = next;
        use_i = !use_i;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

MoveInstruction translate_arcs(MoveInstruction m, const std::map<ArcLabel, ArcLabel>& labels) {
  auto tr = [&](ArcLabel a) {
    auto it = labels.find(a);
    if (it == labels.end()) throw std::logic_error("arc " + std::to_string(raw(a)) + " has no translation");
    return it->second;
  };
  for (auto& a : m.arcs) a = tr(a);
  if (m.edge) m.edge = tr(*m.edge);
  return m;
}

IsotopySequence reverse_sequence(const IsotopySequence& s) {
  std::vector<MoveInstruction> moves;
  Diagram cur = s.final_diagram();
  std::map<ArcLabel, ArcLabel> labels;
  for (auto a : cur.arcs()) labels[a] = a;
  for (std::size_t k = s.step_count(); k >= 1; --k) {
    const auto& st = s.step(k);
    auto inv = translate_arcs(inverse_instruction(s.diagram(k), st.instruction, st.outcome), labels);
    auto out = apply_move(cur, inv);
    auto next_labels = match_arcs(s.diagram(k), out.after);
    if (!next_labels) throw std::logic_error("reversed step " + std::to_string(k) + " did not restore the diagram");
    labels = std::move(*next_labels);
    cur = std::move(out.after);
    moves.push_back(std::move(inv));
  }
  return IsotopySequence::build(s.final_diagram(), moves);
}

IsotopySequence rebuild_sequence(const IsotopySequence& s, const DiagramTransform& transform,
                                 const InstructionRewrite& rewrite) {
  Diagram start = transform(s.initial());
  Diagram cur = start;
  std::map<ArcLabel, ArcLabel> labels;
  for (auto a : cur.arcs()) labels[a] = a;
  std::vector<MoveInstruction> moves;
  for (std::size_t k = 1; k <= s.step_count(); ++k) {
    auto m = rewrite(k, translate_arcs(s.step(k).instruction, labels), cur);
    MoveOutcome out;
    try {
      out = apply_move(cur, m);
    } catch (const MoveError& e) {
      throw SequenceError(k, e.kind(), "step " + std::to_string(k) + ": " + std::string(to_string(e.kind())) + ": " +
                                           e.what());
    }
    auto next = match_arcs(transform(s.diagram(k + 1)), out.after);
    if (!next) throw SequenceError(k, std::nullopt, "step " + std::to_string(k) + ": rebuilt diagram diverged");
    labels = std::move(*next);
    cur = std::move(out.after);
    moves.push_back(std::move(m));
  }
  return IsotopySequence::build(std::move(start), moves);
}

}  // namespace vkr
