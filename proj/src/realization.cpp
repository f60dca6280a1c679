#include "vkr/realization.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace vkr {

namespace {

int sign_of(const Diagram& d, CrossingId c, const SignAssignment& a) {
  const auto& x = d.crossing(c);
  if (!x.is_virtual()) return x.sign;
  auto it = a.find(c);
  return it == a.end() ? 0 : it->second;
}

// Delta test for a triangle move; nullopt while some corner is unassigned.
std::optional<bool> triangle_is_delta(const Diagram& pre, const TriangleSite& t, const SignAssignment& a) {
  std::array<int, 3> over{};
  for (int k = 0; k < 3; ++k) {
    const auto& x = pre.crossing(t.crossings[k]);
    if (!x.is_virtual()) {
      over[k] = 1;
      continue;
    }
    auto it = a.find(x.id);
    if (it == a.end()) return std::nullopt;
    over[k] = Crossing::over_pass(it->second);
  }
  return classify_triangle(t, over).delta;
}

struct TriangleStep {
  std::size_t step;
  TriangleSite site;
  std::vector<CrossingId> virtuals;
};

std::vector<TriangleStep> virtual_triangle_steps(const IsotopySequence& s) {
  std::vector<TriangleStep> out;
  for (std::size_t k = 1; k <= s.step_count(); ++k) {
    const auto& st = s.step(k);
    if (st.instruction.kind != MoveKind::vIII && st.instruction.kind != MoveKind::v) continue;
    TriangleStep ts{k, *st.outcome.triangle, {}};
    for (auto c : ts.site.crossings) {
      if (s.diagram(k).crossing(c).is_virtual()) ts.virtuals.push_back(c);
    }
    out.push_back(std::move(ts));
  }
  return out;
}

void merge_into(SignAssignment& a, const SignAssignment& part) {
  for (const auto& [k, v] : part) a[k] = v;
}

}  // namespace

std::pair<SignAssignment, SignAssignment> class_realizations(const IrClass& c) {
  SignAssignment first, second;
  int sign = 1;
  for (auto x : c.walk) {
    first[x] = sign;
    sign = -sign;
  }
  if (first.at(c.members.front()) < 0) {
    for (auto& [x, v] : first) v = -v;
  }
  for (const auto& [x, v] : first) second[x] = -v;
  return {first, second};
}

std::string_view to_string(FailKind k) { return k == FailKind::gamma ? "gamma" : "delta"; }

ValidityReport replay_realized(const IsotopySequence& s, const SignAssignment& a) {
  for (auto x : s.virtual_crossings()) {
    if (!a.count(x)) throw std::invalid_argument("no sign for virtual crossing " + std::to_string(raw(x)));
  }
  ValidityReport r;
  for (std::size_t k = 1; k <= s.step_count(); ++k) {
    const auto& st = s.step(k);
    auto kind = st.instruction.kind;
    if (kind == MoveKind::vII_plus || kind == MoveKind::vII_minus) {
      const auto& ids = kind == MoveKind::vII_plus ? st.outcome.event.created : st.outcome.event.removed;
      const Diagram& where = kind == MoveKind::vII_plus ? s.diagram(k + 1) : s.diagram(k);
      if (classify_bigon(sign_of(where, ids[0], a), sign_of(where, ids[1], a)) == BigonVerdict::gamma) {
        r.findings.push_back({k, kind, FailKind::gamma, ids});
      }
    } else if (kind == MoveKind::vIII || kind == MoveKind::v) {
      const auto& t = *st.outcome.triangle;
      if (*triangle_is_delta(s.diagram(k), t, a)) {
        r.findings.push_back({k, kind, FailKind::delta, {t.crossings.begin(), t.crossings.end()}});
      }
    }
  }
  return r;
}

SignAssignment class_respecting_assignment(const std::vector<IrClass>& classes, std::uint64_t index) {
  SignAssignment a;
  std::size_t n = classes.size();
  for (std::size_t j = 0; j < n; ++j) {
    auto [first, second] = class_realizations(classes[j]);
    bool take_second = (index >> (n - 1 - j)) & 1U;
    merge_into(a, take_second ? second : first);
  }
  return a;
}

std::vector<SignAssignment> enumerate_realizations(const IsotopySequence& s) {
  auto classes = ir_partition(s);
  if (classes.size() >= 63) throw std::length_error("too many ir classes to enumerate");
  std::vector<SignAssignment> out;
  std::uint64_t total = std::uint64_t{1} << classes.size();
  for (std::uint64_t i = 0; i < total; ++i) out.push_back(class_respecting_assignment(classes, i));
  return out;
}

Diagram realize_diagram(const Diagram& d, const SignAssignment& a) {
  std::vector<Crossing> xs;
  for (const auto& c : d.crossings()) {
    auto it = a.find(c.id);
    if (!c.is_virtual() || it == a.end()) {
      xs.push_back(c);
      continue;
    }
    std::array<bool, 4> in{};
    for (int s = 0; s < 4; ++s) in[s] = c.incoming(s);
    int under = 1 - Crossing::over_pass(it->second);
    xs.push_back(make_classical(c.id, c.slots, in, under));
  }
  return Diagram::from_parts(std::move(xs), {d.circles().begin(), d.circles().end()});
}

IsotopySequence realized_sequence(const IsotopySequence& s, const SignAssignment& a) {
  auto transform = [&](const Diagram& d) { return realize_diagram(d, a); };
  auto rewrite = [&](std::size_t k, MoveInstruction m, const Diagram&) {
    const auto& st = s.step(k);
    switch (m.kind) {
      case MoveKind::vI_plus:
        m.sign = a.at(m.ids[0]);
        break;
      case MoveKind::vII_plus: {
        const Diagram& after = s.diagram(k + 1);
        ArcLabel p1 = st.outcome.forward.at(st.instruction.arcs[0]);
        SlotRef head = after.ends(p1).head;
        int pass = head.slot % 2;
        m.over = pass == Crossing::over_pass(a.at(m.ids[0])) ? 1 : 2;
        break;
      }
      case MoveKind::vIII:
      case MoveKind::v:
        m.kind = MoveKind::III;
        return m;
      default:
        break;
    }
    m.kind = m.kind == MoveKind::vI_plus    ? MoveKind::I_plus
             : m.kind == MoveKind::vI_minus ? MoveKind::I_minus
             : m.kind == MoveKind::vII_plus ? MoveKind::II_plus
             : m.kind == MoveKind::vII_minus ? MoveKind::II_minus
                                             : m.kind;
    return m;
  };
  return rebuild_sequence(s, transform, rewrite);
}

std::string_view to_string(ClassStatus s) {
  switch (s) {
    case ClassStatus::free: return "free";
    case ClassStatus::determined: return "determined";
    case ClassStatus::contradictory: return "contradictory";
  }
  return "?";
}

DeterminationReport determine_classes(const IsotopySequence& s) {
  DeterminationReport rep;
  rep.classes = ir_partition(s);
  rep.per_class.resize(rep.classes.size());
  std::map<CrossingId, std::size_t> class_of;
  std::vector<std::pair<SignAssignment, SignAssignment>> options;
  for (std::size_t j = 0; j < rep.classes.size(); ++j) {
    for (auto x : rep.classes[j].members) class_of[x] = j;
    options.push_back(class_realizations(rep.classes[j]));
  }
  auto sites = virtual_triangle_steps(s);
  auto chosen = [&](std::size_t j) -> const SignAssignment& {
    return rep.per_class[j].choice == 0 ? options[j].first : options[j].second;
  };
  std::set<std::size_t> settled_sites;

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t si = 0; si < sites.size(); ++si) {
      if (settled_sites.count(si)) continue;
      const auto& site = sites[si];
      std::set<std::size_t> involved;
      for (auto x : site.virtuals) involved.insert(class_of.at(x));
      std::vector<std::size_t> open;
      bool blocked = false;
      SignAssignment a;
      for (auto j : involved) {
        switch (rep.per_class[j].status) {
          case ClassStatus::free: open.push_back(j); break;
          case ClassStatus::determined: merge_into(a, chosen(j)); break;
          case ClassStatus::contradictory: blocked = true; break;
        }
      }
      if (blocked) {
        settled_sites.insert(si);
        continue;
      }
      if (open.size() > 1) continue;
      const Diagram& pre = s.diagram(site.step);
      if (open.empty()) {
        settled_sites.insert(si);
        if (*triangle_is_delta(pre, site.site, a)) {
          rep.conflicts.push_back({site.step, {involved.begin(), involved.end()}});
          for (auto j : involved) {
            rep.per_class[j].status = ClassStatus::contradictory;
            rep.per_class[j].steps.push_back(site.step);
          }
          changed = true;
        }
        continue;
      }
      std::size_t j = open.front();
      std::vector<int> ok;
      for (int choice : {0, 1}) {
        SignAssignment trial = a;
        merge_into(trial, choice == 0 ? options[j].first : options[j].second);
        if (!*triangle_is_delta(pre, site.site, trial)) ok.push_back(choice);
      }
      if (ok.size() == 2) {
        settled_sites.insert(si);
        continue;
      }
      settled_sites.insert(si);
      changed = true;
      rep.per_class[j].steps.push_back(site.step);
      if (ok.empty()) {
        rep.per_class[j].status = ClassStatus::contradictory;
        rep.conflicts.push_back({site.step, {involved.begin(), involved.end()}});
      } else {
        rep.per_class[j].status = ClassStatus::determined;
        rep.per_class[j].choice = ok.front();
      }
    }
  }
  return rep;
}

std::string_view to_string(FailureType t) {
  switch (t) {
    case FailureType::realizable: return "-";
    case FailureType::i: return "i";
    case FailureType::ii: return "ii";
    case FailureType::iii: return "iii";
  }
  return "?";
}

SearchResult search_realization(const IsotopySequence& s) {
  SearchResult r;
  r.classes = ir_partition(s);
  if (r.classes.size() >= 63) throw std::length_error("too many ir classes to search");
  r.candidates = std::uint64_t{1} << r.classes.size();
  for (std::uint64_t i = 0; i < r.candidates; ++i) {
    auto a = class_respecting_assignment(r.classes, i);
    if (replay_realized(s, a).valid()) {
      r.found = std::move(a);
      r.found_index = i;
      return r;
    }
  }

  // Type i: one class fails with both realizations on triangles lying wholly in it.
  std::map<CrossingId, std::size_t> class_of;
  for (std::size_t j = 0; j < r.classes.size(); ++j) {
    for (auto x : r.classes[j].members) class_of[x] = j;
  }
  auto sites = virtual_triangle_steps(s);
  for (std::size_t j = 0; j < r.classes.size(); ++j) {
    auto [first, second] = class_realizations(r.classes[j]);
    std::set<std::size_t> witness;
    bool both_fail = true;
    for (const auto* option : {&first, &second}) {
      bool failed = false;
      for (const auto& site : sites) {
        if (site.virtuals.empty()) continue;
        bool inside = std::all_of(site.virtuals.begin(), site.virtuals.end(),
                                  [&](CrossingId x) { return class_of.at(x) == j; });
        if (inside && *triangle_is_delta(s.diagram(site.step), site.site, *option)) {
          failed = true;
          witness.insert(site.step);
        }
      }
      both_fail = both_fail && failed;
    }
    if (both_fail) {
      r.failure.type = FailureType::i;
      r.failure.classes = {j};
      r.failure.steps.assign(witness.begin(), witness.end());
      return r;
    }
  }

  auto det = determine_classes(s);
  if (!det.conflicts.empty()) {
    r.failure.type = FailureType::ii;
    std::set<std::size_t> cls, steps;
    for (const auto& c : det.conflicts) {
      cls.insert(c.classes.begin(), c.classes.end());
      steps.insert(c.step);
    }
    r.failure.classes.assign(cls.begin(), cls.end());
    r.failure.steps.assign(steps.begin(), steps.end());
    return r;
  }
  r.failure.type = FailureType::iii;
  r.failure.manual_review = true;
  for (std::size_t j = 0; j < r.classes.size(); ++j) r.failure.classes.push_back(j);
  return r;
}

}  // namespace vkr
