// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails or exceeds its time limit.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "support.hpp"
#include "vkr/cli.hpp"
#include "vkr/descending.hpp"
#include "vkr/generator.hpp"
#include "vkr/virtualization.hpp"

using namespace vkr;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Collects the first few failures of a criterion.
struct Tally {
  std::size_t failures = 0;
  std::string first;

  void fail(const std::string& what) {
    if (failures++ == 0) first = what;
  }
  Verdict verdict(const std::string& summary) const {
    if (failures == 0) return {true, summary};
    return {false, summary + "; " + std::to_string(failures) + " failures, first: " + first};
  }
};

std::vector<IsotopySequence> generated_sequences(std::size_t count, std::size_t max_moves) {
  std::vector<IsotopySequence> out;
  GeneratorParams p;
  p.max_moves = max_moves;
  for (std::uint64_t seed = 1; out.size() < count; ++seed) {
    p.seed = seed;
    out.push_back(random_sequence(p));
  }
  return out;
}

std::string cli_output(const std::vector<std::string>& args, int* status = nullptr) {
  std::ostringstream out, err;
  int st = run_cli(args, out, err);
  if (status) *status = st;
  return out.str() + "\x1f" + err.str();
}

Verdict fig8_fixture() {
  Tally t;
  auto s = testing::load_fixture("fig8.vkr");
  auto classes = ir_partition(s);
  if (classes.size() != 1) t.fail("ir classes = " + std::to_string(classes.size()));
  auto candidates = enumerate_realizations(s);
  if (candidates.size() != 2) t.fail("class-respecting realizations = " + std::to_string(candidates.size()));
  for (const auto& a : candidates) {
    if (replay_realized(s, a).valid()) t.fail("a class-respecting realization replays valid");
  }
  auto all = testing::all_assignments(s.virtual_crossings());
  if (all.size() != 8) t.fail("total assignments = " + std::to_string(all.size()));
  for (const auto& a : all) {
    if (replay_realized(s, a).valid() || testing::engine_accepts(s, a)) t.fail("a total assignment is valid");
  }
  int status = 0;
  auto out = cli_output({"realize", testing::fixture_path("fig8.vkr")}, &status);
  if (status != 2) t.fail("vkr realize exit status " + std::to_string(status));
  if (out.find(" type=i\n") == std::string::npos) t.fail("vkr realize does not report type=i");
  return t.verdict("1 class, 2 candidates, 8/8 assignments invalid, realize exit 2 type=i");
}

Verdict two_realizations_per_class() {
  Tally t;
  auto seqs = generated_sequences(1000, 12);
  std::size_t classes_checked = 0;
  for (std::size_t k = 0; k < seqs.size(); ++k) {
    const auto& s = seqs[k];
    auto classes = ir_partition(s);
    SignAssignment base;
    for (auto x : s.virtual_crossings()) base[x] = 1;
    for (const auto& c : classes) {
      if (c.members.size() > 16) {
        t.fail("sequence " + std::to_string(k) + ": class too large to enumerate");
        continue;
      }
      int gamma_free = 0;
      for (const auto& part : testing::all_assignments(c.members)) {
        auto a = base;
        for (const auto& [x, sign] : part) a[x] = sign;
        auto r = replay_realized(s, a);
        bool gamma_inside = std::any_of(r.findings.begin(), r.findings.end(), [&](const Finding& f) {
          return f.fail == FailKind::gamma && std::count(c.members.begin(), c.members.end(), f.ids.front());
        });
        gamma_free += !gamma_inside;
      }
      if (gamma_free != 2) t.fail("sequence " + std::to_string(k) + ": " + std::to_string(gamma_free) + " gamma-free");
      ++classes_checked;
    }
    auto all = enumerate_realizations(s);
    if (all.size() != (std::size_t{1} << classes.size())) t.fail("candidate count is not 2^n");
    for (const auto& a : all) {
      for (const auto& f : replay_realized(s, a).findings) {
        if (f.fail == FailKind::gamma) t.fail("gamma finding in a class-respecting candidate");
      }
    }
  }
  return t.verdict(std::to_string(seqs.size()) + " sequences, " + std::to_string(classes_checked) + " classes");
}

Verdict shape_taxonomy() {
  Tally t;
  auto seqs = generated_sequences(1500, 14);
  std::map<IrShape, std::size_t> seen;
  for (const auto& s : seqs) {
    for (const auto& c : ir_partition(s)) {
      auto oracle = testing::shape_of(s, c.members);
      bool agrees = (c.shape == IrShape::two_loops && oracle == testing::ShapeOracle::two_loops) ||
                    (c.shape == IrShape::path && oracle == testing::ShapeOracle::path) ||
                    (c.shape == IrShape::even_cycle && oracle == testing::ShapeOracle::even_cycle);
      if (!agrees) t.fail("class of " + std::to_string(raw(c.members.front())) + " has no single shape");
      if (c.shape == IrShape::even_cycle && c.members.size() % 2 != 0) t.fail("odd cycle");
      if (c.members.size() % 2 == 1 && c.members.size() >= 3 && c.loop_events < 2) t.fail("odd class without 2 loops");
      if (c.loop_events != testing::fixed_points(s, c.members)) t.fail("loop events miscounted");
      ++seen[c.shape];
    }
  }
  std::ostringstream summary;
  summary << seqs.size() << " sequences; two-loops=" << seen[IrShape::two_loops] << " path=" << seen[IrShape::path]
          << " even-cycle=" << seen[IrShape::even_cycle];
  return t.verdict(summary.str());
}

Verdict search_matches_brute_force() {
  Tally t;
  std::size_t checked = 0, unrealizable = 0;
  auto compare = [&](const IsotopySequence& s, const std::string& name) {
    if (s.virtual_crossings().size() > 6) return;
    auto r = search_realization(s);
    bool oracle = testing::brute_force_realizable(s);
    if (r.found.has_value() != oracle) t.fail(name + ": search and brute force disagree");
    if (r.found && !testing::engine_accepts(s, *r.found)) t.fail(name + ": found assignment does not replay");
    ++checked;
    unrealizable += !oracle;
  };
  auto seqs = generated_sequences(1000, 12);
  for (std::size_t k = 0; k < seqs.size(); ++k) compare(seqs[k], "generated " + std::to_string(k));
  for (const auto& start : testing::all_two_kinks()) {
    testing::for_each_skeleton_sequence(start, testing::fig8_skeleton(),
                                        [&](const IsotopySequence& s) { compare(s, "FIG8-shaped"); });
  }
  if (unrealizable == 0) t.fail("no unrealizable sequence was exercised");
  return t.verdict(std::to_string(checked) + " sequences, " + std::to_string(unrealizable) + " unrealizable");
}

Verdict descending_realizations() {
  Tally t;
  std::size_t tested = 0, with_v = 0;
  auto check = [&](const IsotopySequence& s, const std::string& name) {
    if (s.initial().component_count() != 1) return;
    bool has_v = false;
    for (const auto& m : s.instructions()) has_v = has_v || m.kind == MoveKind::v;
    for (const auto& c : scan_basepoints(s)) {
      if (!c.hypothesis) continue;
      ++tested;
      with_v += has_v;
      auto a = vd_realize(s, c.arc, c.orientation);
      if (!replay_realized(s, a).valid()) t.fail(name + ": descending realization invalid");
      for (const auto& v : check_descending_lemmas(s, a, c.arc, c.orientation)) {
        t.fail(name + ": step " + std::to_string(v.step) + ": " + v.what);
      }
    }
  };
  auto seqs = generated_sequences(1000, 12);
  for (std::size_t k = 0; k < seqs.size(); ++k) check(seqs[k], "generated " + std::to_string(k));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 1500; ++k) {
    testing::WalkParams p;
    p.length = 4 + rng() % 10;
    p.filter = [&](const MoveInstruction& m) { return is_virtual_move(m.kind) || rng() % 3 == 0; };
    p.favour = MoveKind::v;
    check(testing::random_walk(rng, p), "walk " + std::to_string(k));
  }
  if (with_v == 0) t.fail("no case with a v move passed the hypothesis");
  return t.verdict(std::to_string(tested) + " (sequence, base point) cases, " + std::to_string(with_v) + " with v moves");
}

Verdict gauss_chords() {
  Tally t;
  std::map<MoveKind, std::size_t> counts;
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 800; ++trial) {
    testing::WalkParams p;
    p.length = 20;
    p.max_crossings = 8;
    auto s = testing::random_walk(rng, p);
    for (std::size_t k = 1; k <= s.step_count(); ++k) {
      const auto& m = s.step(k).instruction;
      auto out = apply_move(s.diagram(k), m);
      auto why = testing::chord_pattern_violation(s.diagram(k), m, out);
      if (!why.empty()) t.fail(std::string(to_string(m.kind)) + ": " + why);
      ++counts[m.kind];
    }
  }
  for (auto k : {MoveKind::I_plus, MoveKind::I_minus, MoveKind::II_plus, MoveKind::II_minus, MoveKind::vI_plus,
                 MoveKind::vII_plus, MoveKind::vIII, MoveKind::v}) {
    if (counts[k] == 0) t.fail(std::string("no ") + std::string(to_string(k)) + " move exercised");
  }
  std::size_t total = 0;
  for (const auto& [k, n] : counts) total += n;
  return t.verdict(std::to_string(total) + " moves");
}

Verdict virtualization_laws() {
  Tally t;
  std::mt19937_64 rng(3);
  std::size_t sequences = 0, passing_sets = 0, unions = 0;
  for (int trial = 0; trial < 800; ++trial) {
    testing::WalkParams p;
    p.length = 6 + rng() % 12;
    p.favour = MoveKind::III;
    auto s = testing::random_walk(rng, p);
    auto tc = temporary_classical_crossings(s);
    if (tc.size() > 8) continue;
    ++sequences;
    std::vector<std::vector<CrossingId>> passing;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << tc.size()); ++mask) {
      std::vector<CrossingId> j;
      for (std::size_t i = 0; i < tc.size(); ++i) {
        if ((mask >> i) & 1) j.push_back(tc[i]);
      }
      auto check = check_sequentially_virtualizable(s, j);
      if (!check.holds) continue;
      ++passing_sets;
      try {
        auto rebuilt = build_sequence(to_file(virtualize_crossings(s, j)));
        for (auto x : j) {
          if (rebuilt.lifetime(x).kind != CrossingKind::virtual_crossing) t.fail("crossing not virtualized");
        }
      } catch (const std::exception& e) {
        t.fail(std::string("virtualized sequence does not re-validate: ") + e.what());
      }
      passing.push_back(std::move(j));
    }
    for (std::size_t a = 0; a < passing.size(); ++a) {
      for (std::size_t b = a + 1; b < passing.size(); ++b) {
        std::set<CrossingId> u(passing[a].begin(), passing[a].end());
        u.insert(passing[b].begin(), passing[b].end());
        ++unions;
        if (!check_sequentially_virtualizable(s, {u.begin(), u.end()}).holds) t.fail("union of passing sets fails");
      }
    }
    auto mv = maximal_virtualize(s);
    if (!maximal_virtualize(mv.sequence).virtualized.empty()) t.fail("maximal virtualization is not idempotent");
    for (const auto& j : passing) {
      for (auto x : j) {
        if (!std::count(mv.virtualized.begin(), mv.virtualized.end(), x)) t.fail("maximal virtualization misses a set");
      }
    }
  }
  return t.verdict(std::to_string(sequences) + " sequences, " + std::to_string(passing_sets) + " passing sets, " +
                   std::to_string(unions) + " unions");
}

Verdict reversal_duality() {
  Tally t;
  auto seqs = generated_sequences(1000, 12);
  std::size_t crossings = 0;
  for (std::size_t k = 0; k < seqs.size(); ++k) {
    auto rev = reverse_sequence(seqs[k]);
    for (auto x : seqs[k].crossing_ids()) {
      ++crossings;
      if (i_map(rev, x) != r_map(seqs[k], x)) t.fail("sequence " + std::to_string(k) + ": i(reverse) != r");
      if (r_map(rev, x) != i_map(seqs[k], x)) t.fail("sequence " + std::to_string(k) + ": r(reverse) != i");
    }
  }
  return t.verdict(std::to_string(seqs.size()) + " sequences, " + std::to_string(crossings) + " crossings");
}

Verdict round_trip_and_determinism() {
  Tally t;
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(VKR_FIXTURE_DIR)) {
    if (e.is_regular_file() && e.path().extension() == ".vkr") files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    auto first = read_sequence_file(path);
    auto second = parse_sequence_file(format_sequence_file(first));
    if (!(first == second)) t.fail(path + ": parse/serialize/parse changed the file");
  }
  std::vector<std::vector<std::string>> runs;
  for (const auto& path : files) {
    for (const char* cmd : {"validate", "ir", "realize", "maxvirt", "gauss"}) runs.push_back({cmd, path});
    runs.push_back({"realize", path, "--all"});
    runs.push_back({"vd", path, "--basepoint", "1", "--orient", "fwd"});
  }
  runs.push_back({"search", "--seed", "1", "--trials", "20", "--max-moves", "8"});
  for (const auto& args : runs) {
    if (cli_output(args) != cli_output(args)) t.fail(args[0] + " " + args[1] + ": output differs between runs");
  }
  return t.verdict(std::to_string(files.size()) + " fixtures, " + std::to_string(runs.size()) + " commands");
}

struct Criterion {
  int number;
  const char* name;
  double limit_seconds;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "FIG8 fixture", 1, fig8_fixture},
      {2, "two gamma-free realizations per class", 60, two_realizations_per_class},
      {3, "ir class shapes", 60, shape_taxonomy},
      {4, "realization search equals brute force", 120, search_matches_brute_force},
      {5, "virtually descending realizations", 120, descending_realizations},
      {6, "Gauss code under moves", 60, gauss_chords},
      {7, "sequential virtualization", 60, virtualization_laws},
      {8, "reversal swaps i and r", 30, reversal_duality},
      {9, "file round-trip and CLI determinism", 10, round_trip_and_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds) {
      v.pass = false;
      v.detail += "; exceeded " + std::to_string(static_cast<int>(c.limit_seconds)) + " s";
    }
    failed += !v.pass;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", seconds);
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c.number << " (" << c.name << ", " << timing
              << "): " << v.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
