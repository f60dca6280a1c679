#include "support.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace vkr::testing {

std::string fixture_path(const std::string& name) { return std::string(VKR_FIXTURE_DIR) + "/" + name; }

IsotopySequence load_fixture(const std::string& name) { return build_sequence(read_sequence_file(fixture_path(name))); }

IsotopySequence random_walk(std::mt19937_64& rng, const WalkParams& p) {
  Diagram d = p.start;
  std::vector<MoveInstruction> moves;
  int next = 1;
  for (const auto& c : d.crossings()) next = std::max(next, raw(c.id) + 1);
  for (std::size_t k = 0; k < p.length; ++k) {
    std::vector<MoveInstruction> ok, favoured;
    for (auto& m : legal_moves(d, CrossingId{next})) {
      if (is_creation(m.kind) && d.crossings().size() + (is_pair_move(m.kind) ? 2 : 1) > p.max_crossings) continue;
      if (p.filter && !p.filter(m)) continue;
      if (p.favour && m.kind == *p.favour) favoured.push_back(m);
      ok.push_back(std::move(m));
    }
    if (ok.empty()) break;
    const auto& pool = !favoured.empty() && rng() % 2 ? favoured : ok;
    auto m = pool[rng() % pool.size()];
    d = apply_move(d, m).after;
    if (is_creation(m.kind)) next += is_pair_move(m.kind) ? 2 : 1;
    moves.push_back(std::move(m));
  }
  return IsotopySequence::build(p.start, moves);
}

Diagram random_two_kinks(std::mt19937_64& rng) {
  Diagram d = parse_diagram("O(1)");
  for (int id : {1, 2}) {
    auto arcs = d.arcs();
    MoveInstruction m{MoveKind::I_plus, {arcs[rng() % arcs.size()]}, {CrossingId{id}},
                      rng() % 2 ? Side::left : Side::right, {}, rng() % 2 ? 1 : -1, 0, {}};
    d = apply_move(d, m).after;
  }
  return d;
}

std::vector<Diagram> all_two_kinks() {
  std::vector<Diagram> out;
  Diagram o = parse_diagram("O(1)");
  for (auto s1 : {Side::left, Side::right}) {
    for (int g1 : {1, -1}) {
      auto d1 = apply_move(o, {MoveKind::I_plus, {ArcLabel{1}}, {CrossingId{1}}, s1, {}, g1, 0, {}}).after;
      for (auto a : d1.arcs()) {
        for (auto s2 : {Side::left, Side::right}) {
          for (int g2 : {1, -1}) {
            out.push_back(apply_move(d1, {MoveKind::I_plus, {a}, {CrossingId{2}}, s2, {}, g2, 0, {}}).after);
          }
        }
      }
    }
  }
  return out;
}

void for_each_skeleton_sequence(const Diagram& start, const std::vector<MoveKind>& skeleton,
                                const std::function<void(const IsotopySequence&)>& visit) {
  std::vector<MoveInstruction> path;
  int first = 1;
  for (const auto& c : start.crossings()) first = std::max(first, raw(c.id) + 1);
  std::function<void(const Diagram&, int)> extend = [&](const Diagram& d, int next) {
    if (path.size() == skeleton.size()) {
      visit(IsotopySequence::build(start, path));
      return;
    }
    for (auto& m : legal_moves(d, CrossingId{next})) {
      if (m.kind != skeleton[path.size()]) continue;
      int bump = is_creation(m.kind) ? (is_pair_move(m.kind) ? 2 : 1) : 0;
      path.push_back(m);
      extend(apply_move(d, m).after, next + bump);
      path.pop_back();
    }
  };
  extend(start, first);
}

std::vector<MoveKind> fig8_skeleton() {
  return {MoveKind::vI_plus, MoveKind::vII_plus, MoveKind::v,         MoveKind::v,
          MoveKind::v,       MoveKind::v,        MoveKind::vII_minus, MoveKind::vI_minus};
}

std::vector<SignAssignment> all_assignments(const std::vector<CrossingId>& ids) {
  std::vector<SignAssignment> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ids.size()); ++mask) {
    SignAssignment a;
    for (std::size_t i = 0; i < ids.size(); ++i) a[ids[i]] = (mask >> i) & 1 ? -1 : 1;
    out.push_back(std::move(a));
  }
  return out;
}

bool engine_accepts(const IsotopySequence& s, const SignAssignment& a) {
  try {
    realized_sequence(s, a);
    return true;
  } catch (const SequenceError&) {
    return false;
  }
}

bool brute_force_realizable(const IsotopySequence& s) {
  for (const auto& a : all_assignments(s.virtual_crossings())) {
    if (engine_accepts(s, a)) return true;
  }
  return false;
}

bool is_total_order(const std::array<OverUnder, 3>& rel) {
  std::array<int, 3> wins{};
  for (const auto& r : rel) ++wins[r.over];
  std::sort(wins.begin(), wins.end());
  return wins == std::array<int, 3>{0, 1, 2};
}

ShapeOracle shape_of(const IsotopySequence& s, const std::vector<CrossingId>& members) {
  std::set<std::pair<CrossingId, CrossingId>> i_edges, r_edges;
  int loops = 0;
  for (auto x : members) {
    auto add = [&](CrossingId y, auto& edges) {
      if (y == x) {
        ++loops;
        return;
      }
      edges.insert({std::min(x, y), std::max(x, y)});
    };
    add(i_map(s, x), i_edges);
    add(r_map(s, x), r_edges);
  }
  // every vertex carries one i end and one r end, so the class is a path or a cycle
  if (members.size() == 1) return loops == 2 ? ShapeOracle::two_loops : ShapeOracle::other;
  if (loops == 2 && i_edges.size() + r_edges.size() == members.size() - 1) return ShapeOracle::path;
  if (loops == 0 && i_edges.size() + r_edges.size() == members.size()) {
    return members.size() % 2 == 0 ? ShapeOracle::even_cycle : ShapeOracle::odd_cycle;
  }
  return ShapeOracle::other;
}

int fixed_points(const IsotopySequence& s, const std::vector<CrossingId>& members) {
  int n = 0;
  for (auto x : members) n += (i_map(s, x) == x) + (r_map(s, x) == x);
  return n;
}

std::vector<GaussLetter> without(const std::vector<GaussLetter>& w, const std::vector<CrossingId>& drop) {
  std::vector<GaussLetter> out;
  for (const auto& l : w) {
    if (std::find(drop.begin(), drop.end(), l.crossing) == drop.end()) out.push_back(l);
  }
  return out;
}

bool same_cycle(const std::vector<GaussLetter>& a, const std::vector<GaussLetter>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t r = 0; r < b.size(); ++r) {
    auto split = static_cast<std::ptrdiff_t>(r);
    auto tail = static_cast<std::ptrdiff_t>(b.size() - r);
    if (std::equal(b.begin() + split, b.end(), a.begin()) && std::equal(b.begin(), b.begin() + split, a.begin() + tail)) {
      return true;
    }
  }
  return false;
}

namespace {

GaussCode filtered(const GaussCode& g, const std::vector<CrossingId>& drop) {
  GaussCode out;
  for (const auto& w : g.words) out.words.push_back(without(w, drop));
  return out;
}

struct Position {
  std::size_t word = 0, index = 0;
  GaussLetter letter;
};

std::optional<Position> find_letter(const GaussCode& g, CrossingId c, bool over) {
  for (std::size_t w = 0; w < g.words.size(); ++w) {
    for (std::size_t i = 0; i < g.words[w].size(); ++i) {
      if (g.words[w][i].crossing == c && g.words[w][i].over == over) return Position{w, i, g.words[w][i]};
    }
  }
  return std::nullopt;
}

bool adjacent(const GaussCode& g, const Position& a, const Position& b) {
  if (a.word != b.word) return false;
  std::size_t n = g.words[a.word].size();
  return (a.index + 1) % n == b.index || (b.index + 1) % n == a.index;
}

std::multiset<GaussLetter> letters(const GaussCode& g) {
  std::multiset<GaussLetter> out;
  for (const auto& w : g.words) out.insert(w.begin(), w.end());
  return out;
}

}  // namespace

std::string chord_pattern_violation(const Diagram& before, const MoveInstruction& m, const MoveOutcome& out) {
  GaussCode gb = before.gauss_code(), ga = out.after.gauss_code();
  if (is_virtual_move(m.kind)) return gb.equivalent(ga) ? "" : "virtual move changed the Gauss code";
  if (m.kind == MoveKind::III) return letters(gb) == letters(ga) ? "" : "III changed the Gauss letters";

  // `big` holds the chords of the move, `small` lacks them.
  bool adds = is_creation(m.kind);
  const GaussCode& big = adds ? ga : gb;
  const GaussCode& small = adds ? gb : ga;
  const auto& chords = adds ? out.event.created : out.event.removed;
  if (chords.size() != (is_pair_move(m.kind) ? 2U : 1U)) return "wrong number of chords";
  if (!filtered(big, chords).equivalent(small)) return "other chords changed";

  std::vector<Position> over, under;
  for (auto c : chords) {
    auto o = find_letter(big, c, true), u = find_letter(big, c, false);
    if (!o || !u) return "chord letters missing";
    over.push_back(*o);
    under.push_back(*u);
  }
  if (is_loop_move(m.kind)) {
    if (!adjacent(big, over[0], under[0])) return "kink letters not adjacent";
    if (m.kind == MoveKind::I_plus && over[0].letter.sign != m.sign) return "kink sign differs from the instruction";
    return "";
  }
  if (!adjacent(big, over[0], over[1])) return "over letters not adjacent";
  if (!adjacent(big, under[0], under[1])) return "under letters not adjacent";
  if (over[0].letter.sign == over[1].letter.sign) return "bigon crossings share a sign";
  return "";
}

}  // namespace vkr::testing
