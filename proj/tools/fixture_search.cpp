// Searches small move sequences matching a fixed move skeleton and writes the
// first one satisfying the fixture's properties. Fixtures are certified
// independently by the test suite; this tool only finds candidates.

#include <CLI11.hpp>
#include <algorithm>
#include <functional>
#include <iostream>
#include <random>

#include "vkr/realization.hpp"
#include "vkr/seqfile.hpp"

using namespace vkr;

namespace {

using Predicate = std::function<bool(const IsotopySequence&)>;

struct Dfs {
  std::vector<std::vector<MoveKind>> skeleton;  // allowed kinds per step
  Predicate accept;
  std::size_t complete = 0;
  std::size_t nodes = 0;
  std::size_t limit = 0;

  std::optional<std::vector<MoveInstruction>> run(const Diagram& start, int next_id) {
    std::vector<MoveInstruction> path;
    if (extend(start, start, next_id, path)) return path;
    return std::nullopt;
  }

  bool extend(const Diagram& init, const Diagram& d, int next_id, std::vector<MoveInstruction>& path) {
    if (++nodes > limit && limit) return false;
    if (path.size() == skeleton.size()) {
      ++complete;
      return accept(IsotopySequence::build(init, path));
    }
    const auto& want = skeleton[path.size()];
    for (const auto& m : legal_moves(d, CrossingId{next_id})) {
      if (std::find(want.begin(), want.end(), m.kind) == want.end()) continue;
      auto out = apply_move(d, m);
      path.push_back(m);
      int bump = is_creation(m.kind) ? (is_pair_move(m.kind) ? 2 : 1) : 0;
      if (extend(init, out.after, next_id + bump, path)) return true;
      path.pop_back();
    }
    return false;
  }
};

std::vector<std::pair<Diagram, std::vector<MoveInstruction>>> two_kink_starts() {
  std::vector<std::pair<Diagram, std::vector<MoveInstruction>>> out;
  Diagram o = parse_diagram("O(1)");
  for (auto s1 : {Side::left, Side::right}) {
    for (int g1 : {1, -1}) {
      MoveInstruction m1{MoveKind::I_plus, {ArcLabel{1}}, {CrossingId{1}}, s1, {}, g1, 0, {}};
      auto d1 = apply_move(o, m1).after;
      for (auto a : d1.arcs()) {
        for (auto s2 : {Side::left, Side::right}) {
          for (int g2 : {1, -1}) {
            MoveInstruction m2{MoveKind::I_plus, {a}, {CrossingId{2}}, s2, {}, g2, 0, {}};
            out.push_back({apply_move(d1, m2).after, {m1, m2}});
          }
        }
      }
    }
  }
  return out;
}

bool all_assignments_fail(const IsotopySequence& s) {
  auto vs = s.virtual_crossings();
  for (unsigned mask = 0; mask < (1U << vs.size()); ++mask) {
    SignAssignment a;
    for (std::size_t i = 0; i < vs.size(); ++i) a[vs[i]] = (mask >> i) & 1U ? -1 : 1;
    if (replay_realized(s, a).valid()) return false;
  }
  return true;
}

// The sequence with classical crossing `c` switched in every diagram.
std::optional<IsotopySequence> switched(const IsotopySequence& s, CrossingId c) {
  auto transform = [&](const Diagram& d) {
    std::vector<Crossing> xs;
    for (const auto& x : d.crossings()) {
      if (x.id != c) {
        xs.push_back(x);
        continue;
      }
      std::array<bool, 4> in{};
      for (int k = 0; k < 4; ++k) in[k] = x.incoming(k);
      xs.push_back(make_classical(x.id, x.slots, in, 1));
    }
    return Diagram::from_parts(std::move(xs), {d.circles().begin(), d.circles().end()});
  };
  auto rewrite = [](std::size_t, MoveInstruction m, const Diagram&) { return m; };
  try {
    return rebuild_sequence(s, transform, rewrite);
  } catch (const SequenceError&) {
    return std::nullopt;
  }
}

bool fig8_properties(const IsotopySequence& s) {
  auto classes = ir_partition(s);
  if (classes.size() != 1 || classes[0].members.size() != 3) return false;
  if (!all_assignments_fail(s)) return false;
  for (int c : {1, 2}) {
    auto sw = switched(s, CrossingId{c});
    if (!sw || !search_realization(*sw).found) return false;
  }
  // both kinks must still be removable at the end, for the extended fixture
  const auto& last = s.final_diagram();
  for (int c : {1, 2}) {
    MoveInstruction m{MoveKind::I_minus, {}, {CrossingId{c}}, {}, {}, 0, 0, {}};
    try {
      apply_move(last, m);
    } catch (const MoveError&) {
      return false;
    }
  }
  return true;
}

int find_fig8(const std::string& dir, std::size_t limit) {
  Dfs dfs;
  dfs.skeleton = {{MoveKind::vI_plus}, {MoveKind::vII_plus}, {MoveKind::v},         {MoveKind::v},
                  {MoveKind::v},       {MoveKind::v},        {MoveKind::vII_minus}, {MoveKind::vI_minus}};
  dfs.accept = fig8_properties;
  dfs.limit = limit;
  for (const auto& [start, prefix] : two_kink_starts()) {
    auto found = dfs.run(start, 3);
    if (!found) continue;
    SequenceFile f{start, *found, std::nullopt};
    write_sequence_file(dir + "/fig8.vkr", f);

    // Extended form: the kinks are introduced and removed inside the sequence.
    auto s = IsotopySequence::build(start, *found);
    std::vector<MoveInstruction> ext = prefix;
    ext.insert(ext.end(), found->begin(), found->end());
    Diagram d = s.final_diagram();
    for (int c : {1, 2}) {
      MoveInstruction m{MoveKind::I_minus, {}, {CrossingId{c}}, {}, {}, 0, 0, {}};
      d = apply_move(d, m).after;
      ext.push_back(m);
    }
    // The prefix rebuilds `start` with the same labels since both come from O(1).
    auto check = IsotopySequence::build(parse_diagram("O(1)"), prefix);
    if (!(check.final_diagram() == start)) {
      std::cerr << "prefix does not rebuild the start diagram\n";
      return 1;
    }
    write_sequence_file(dir + "/fig8_extended.vkr", {parse_diagram("O(1)"), ext, std::nullopt});
    std::cout << "fig8: nodes=" << dfs.nodes << "\n";
    return 0;
  }
  std::cerr << "fig8: not found (nodes=" << dfs.nodes << ")\n";
  return 1;
}

int find_fig1(const std::string& dir, std::size_t limit) {
  // The figure's arrows run both ways, but a v move needs two virtual
  // crossings and the sequence must end without any, which fixes the
  // direction of every virtual step. The II steps may go either way.
  const std::vector<MoveKind> vii_plus{MoveKind::vII_plus}, vii_minus{MoveKind::vII_minus};
  const std::vector<MoveKind> vi_minus{MoveKind::vI_minus};
  const std::vector<MoveKind> ii{MoveKind::II_plus, MoveKind::II_minus};
  const std::vector<MoveKind> v{MoveKind::v};
  const std::vector<std::vector<MoveKind>> skeleton{vii_plus, vii_plus, ii, v, vi_minus, v, v, vi_minus, ii, vii_minus};

  // K_1 is a kinked circle: with fewer than two arcs no finger move exists.
  std::vector<Diagram> starts;
  Diagram o = parse_diagram("O(1)");
  for (auto side : {Side::left, Side::right}) {
    for (int sign : {1, -1}) {
      starts.push_back(apply_move(o, {MoveKind::I_plus, {ArcLabel{1}}, {CrossingId{1}}, side, {}, sign, 0, {}}).after);
    }
  }

  std::mt19937_64 rng(1);
  if (limit == 0) limit = 2'000'000;
  for (std::size_t trial = 0; trial < limit; ++trial) {
    const auto& start = starts[trial % starts.size()];
    Diagram d = start;
    int next = static_cast<int>(start.crossings().size()) + 1;
    std::vector<MoveInstruction> path;
    for (const auto& want : skeleton) {
      std::vector<MoveInstruction> ok;
      for (auto& m : legal_moves(d, CrossingId{next})) {
        if (std::find(want.begin(), want.end(), m.kind) != want.end()) ok.push_back(std::move(m));
      }
      if (ok.empty()) break;
      auto m = ok[rng() % ok.size()];
      d = apply_move(d, m).after;
      if (is_creation(m.kind)) next += is_pair_move(m.kind) ? 2 : 1;
      path.push_back(std::move(m));
    }
    if (path.size() != skeleton.size() || d.virtual_count() != 0) continue;
    auto s = IsotopySequence::build(start, path);
    if (s.virtual_crossings().empty() || !search_realization(s).found) continue;
    write_sequence_file(dir + "/fig1.vkr", {start, path, std::nullopt});
    std::cout << "fig1: trials=" << trial + 1 << "\n";
    return 0;
  }
  std::cerr << "fig1: not found in " << limit << " trials\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixture search"};
  std::string which, dir = "fixtures";
  std::size_t limit = 0;
  app.add_option("fixture", which, "fig8 or fig1")->required()->check(CLI::IsMember({"fig8", "fig1"}));
  app.add_option("--dir", dir, "output directory");
  app.add_option("--limit", limit, "node limit (0 = none)");
  CLI11_PARSE(app, argc, argv);
  return which == "fig8" ? find_fig8(dir, limit) : find_fig1(dir, limit);
}
