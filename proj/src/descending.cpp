#include "vkr/descending.hpp"

#include <algorithm>
#include <map>

namespace vkr {

namespace {

std::string num(std::size_t k) { return std::to_string(k); }

ArcLabel base_in(const BasePoint& b, std::size_t k) { return *b.arc.at(k - 1); }

BasePoint fixed_basepoint(const IsotopySequence& s, ArcLabel base) {
  auto b = track_basepoint(s, base);
  if (auto k = b.first_unfixed_step()) {
    throw DescendingError(DescendingError::Kind::base_not_fixed, *k,
                          "base point on arc " + std::to_string(raw(base)) + " is not fixed by step " + num(*k));
  }
  return b;
}

}  // namespace

std::optional<std::size_t> BasePoint::first_unfixed_step() const {
  for (std::size_t k = 0; k < fixed.size(); ++k) {
    if (!fixed[k]) return k + 1;
  }
  return std::nullopt;
}

BasePoint track_basepoint(const IsotopySequence& s, ArcLabel arc) {
  if (!s.initial().has_arc(arc)) {
    throw DescendingError(DescendingError::Kind::arc_absent, 0, "arc " + std::to_string(raw(arc)) + " not in K_1");
  }
  for (std::size_t k = 1; k <= s.diagram_count(); ++k) {
    if (s.diagram(k).component_count() != 1) {
      throw DescendingError(DescendingError::Kind::multi_component, k, "base points need a one-component sequence");
    }
  }
  BasePoint b;
  b.arc.push_back(arc);
  for (std::size_t k = 1; k <= s.step_count(); ++k) {
    std::optional<ArcLabel> next;
    if (auto cur = b.arc.back()) {
      const auto& fwd = s.step(k).outcome.forward;
      auto it = fwd.find(*cur);
      if (it != fwd.end()) next = it->second;
    }
    b.fixed.push_back(next.has_value());
    b.arc.push_back(next);
  }
  return b;
}

std::vector<Visit> visits_from(const Diagram& d, ArcLabel base, Orientation o) {
  auto v = d.traverse(base);
  if (o == Orientation::reverse) std::reverse(v.begin(), v.end());
  return v;
}

std::vector<ArcLabel> arcs_from(const Diagram& d, ArcLabel base, Orientation o) {
  std::vector<ArcLabel> out{base};
  for (const auto& v : visits_from(d, base, o)) {
    int slot = o == Orientation::forward ? v.in_slot + 2 : v.in_slot;
    out.push_back(d.arc_at({v.crossing, slot}));
  }
  if (out.size() > 1) out.pop_back();  // the walk ends back on `base`
  return out;
}

bool is_virtually_descending(const Diagram& d, const SignAssignment& a, ArcLabel base, Orientation o) {
  std::map<CrossingId, int> first_pass;
  for (const auto& v : visits_from(d, base, o)) first_pass.try_emplace(v.crossing, v.pass);
  for (const auto& c : d.crossings()) {
    if (!c.is_virtual()) continue;
    auto it = a.find(c.id);
    if (it == a.end()) continue;
    if (first_pass.at(c.id) != Crossing::over_pass(it->second)) return false;
  }
  return true;
}

HypothesisCheck check_vd_hypothesis(const IsotopySequence& s, ArcLabel base, Orientation o) {
  auto b = fixed_basepoint(s, base);
  HypothesisCheck h;
  for (std::size_t k = 1; k <= s.step_count(); ++k) {
    const auto& st = s.step(k);
    if (st.instruction.kind != MoveKind::v) continue;
    const Diagram& pre = s.diagram(k);
    CrossingId c = st.instruction.ids[2];
    for (const auto& v : visits_from(pre, base_in(b, k), o)) {
      if (v.crossing != c) continue;
      if (v.pass != 1) {
        h.holds = false;
        h.violating_steps.push_back(k);
      }
      break;
    }
  }
  return h;
}

SignAssignment vd_realize(const IsotopySequence& s, ArcLabel base, Orientation o) {
  auto h = check_vd_hypothesis(s, base, o);
  if (!h.holds) {
    throw DescendingError(DescendingError::Kind::hypothesis_not_satisfied, h.violating_steps.front(),
                          "classical crossing met under first at v move, step " + num(h.violating_steps.front()));
  }
  auto b = track_basepoint(s, base);
  SignAssignment a;
  auto realize_new = [&](const Diagram& d, ArcLabel at) {
    for (const auto& v : visits_from(d, at, o)) {
      const auto& c = d.crossing(v.crossing);
      if (!c.is_virtual() || a.count(c.id)) continue;
      a[c.id] = v.pass == 1 ? 1 : -1;
    }
  };
  realize_new(s.initial(), base);
  for (std::size_t k = 1; k <= s.step_count(); ++k) {
    if (!s.step(k).outcome.event.created.empty()) realize_new(s.diagram(k + 1), base_in(b, k + 1));
  }
  return a;
}

bool v_move_predicts_delta(const Diagram& pre, const TriangleSite& t, ArcLabel base, Orientation o) {
  int classical = -1;
  for (int k = 0; k < 3; ++k) {
    if (!pre.crossing(t.crossings[k]).is_virtual()) classical = k;
  }
  if (classical < 0) throw std::invalid_argument("not a v-move triangle");
  int under = t.pass_strand[classical][0];
  int over = t.pass_strand[classical][1];
  int virtual_only = 3 - under - over;
  auto order = arcs_from(pre, base, o);
  auto pos = [&](int strand) {
    return std::find(order.begin(), order.end(), t.edges[strand]) - order.begin();
  };
  std::array<std::pair<long, int>, 3> met{{{pos(0), 0}, {pos(1), 1}, {pos(2), 2}}};
  std::sort(met.begin(), met.end());
  return met[0].second == under && met[1].second == virtual_only;
}

std::vector<LemmaViolation> check_descending_lemmas(const IsotopySequence& s, const SignAssignment& a, ArcLabel base,
                                                    Orientation o) {
  auto b = fixed_basepoint(s, base);
  std::vector<LemmaViolation> out;
  auto present = [&](std::size_t k) {
    SignAssignment part;
    for (const auto& c : s.diagram(k).crossings()) {
      if (auto it = a.find(c.id); it != a.end()) part.insert(*it);
    }
    return part;
  };
  std::vector<bool> desc;
  for (std::size_t k = 1; k <= s.diagram_count(); ++k) {
    desc.push_back(is_virtually_descending(s.diagram(k), present(k), base_in(b, k), o));
  }
  for (std::size_t k = 1; k <= s.step_count(); ++k) {
    const auto& st = s.step(k);
    auto kind = st.instruction.kind;
    if (!is_triangle_move(kind) || !desc[k - 1]) continue;
    if (!desc[k]) out.push_back({k, "descending diagram not descending after triangle move"});
    const Diagram& pre = s.diagram(k);
    const auto& t = *st.outcome.triangle;
    std::array<int, 3> over{};
    for (int j = 0; j < 3; ++j) {
      const auto& c = pre.crossing(t.crossings[j]);
      over[j] = c.is_virtual() ? Crossing::over_pass(a.at(c.id)) : 1;
    }
    bool delta = classify_triangle(t, over).delta;
    if (kind == MoveKind::vIII && delta) out.push_back({k, "vIII in descending diagram realized as delta"});
    if (kind == MoveKind::v && delta != v_move_predicts_delta(pre, t, base_in(b, k), o)) {
      out.push_back({k, "v move delta predicate disagrees with classification"});
    }
  }
  for (const auto& cls : ir_partition(s)) {
    auto [first, second] = class_realizations(cls);
    bool matches_first = true, matches_second = true;
    for (auto x : cls.members) {
      matches_first = matches_first && a.at(x) == first.at(x);
      matches_second = matches_second && a.at(x) == second.at(x);
    }
    if (!matches_first && !matches_second) {
      out.push_back({0, "assignment splits ir class of " + std::to_string(raw(cls.members.front()))});
    }
  }
  return out;
}

std::vector<BasePointChoice> scan_basepoints(const IsotopySequence& s) {
  std::vector<BasePointChoice> out;
  for (std::size_t k = 1; k <= s.diagram_count(); ++k) {
    if (s.diagram(k).component_count() != 1) return out;
  }
  for (auto arc : s.initial().arcs()) {
    auto b = track_basepoint(s, arc);
    bool fixed = !b.first_unfixed_step().has_value();
    for (auto o : {Orientation::forward, Orientation::reverse}) {
      BasePointChoice c{arc, o, fixed, false};
      if (fixed) c.hypothesis = check_vd_hypothesis(s, arc, o).holds;
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace vkr
