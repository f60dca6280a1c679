#include "vkr/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "vkr/descending.hpp"
#include "vkr/search.hpp"
#include "vkr/seqfile.hpp"
#include "vkr/virtualization.hpp"

namespace vkr {

namespace {

std::string ids_text(const std::vector<CrossingId>& ids) {
  if (ids.empty()) return "-";
  std::string s;
  for (auto c : ids) {
    if (!s.empty()) s += ',';
    s += std::to_string(raw(c));
  }
  return s;
}

std::string numbers_text(const std::vector<std::size_t>& xs) {
  if (xs.empty()) return "-";
  std::string s;
  for (auto x : xs) {
    if (!s.empty()) s += ',';
    s += std::to_string(x);
  }
  return s;
}

std::string assignment_text(const SignAssignment& a) {
  if (a.empty()) return "-";
  std::string s;
  for (const auto& [c, sign] : a) {
    if (!s.empty()) s += ',';
    s += std::to_string(raw(c)) + (sign > 0 ? ":+" : ":-");
  }
  return s;
}

std::string_view orient_text(Orientation o) { return o == Orientation::forward ? "fwd" : "rev"; }

void print_findings(std::ostream& out, const ValidityReport& r) {
  for (const auto& f : r.findings) {
    out << "step=" << f.step << " move=" << to_string(f.move) << " fail=" << to_string(f.fail)
        << " ids=" << ids_text(f.ids) << "\n";
  }
  out << "verdict=" << (r.valid() ? "valid" : "invalid") << "\n";
}

std::string gauss_text(const GaussCode& g) {
  auto c = g.canonical();
  std::string s;
  for (const auto& w : c.words) {
    if (!s.empty()) s += " | ";
    if (w.empty()) {
      s += "-";
      continue;
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) s += ' ';
      s += w[i].over ? 'O' : 'U';
      s += std::to_string(raw(w[i].crossing));
      s += w[i].sign > 0 ? '+' : '-';
    }
  }
  return s.empty() ? "-" : s;
}

// Usage errors raised by command handlers after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

IsotopySequence load(const std::string& path, SequenceFile* file = nullptr) {
  auto f = read_sequence_file(path);
  auto s = build_sequence(f);
  if (file) *file = std::move(f);
  return s;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  auto s = load(path);
  std::size_t classical = 0;
  for (const auto& [id, life] : s.lifetimes()) classical += life.kind == CrossingKind::classical;
  out << "ok steps=" << s.step_count() << " diagrams=" << s.diagram_count()
      << " crossings=" << s.lifetimes().size() << " classical=" << classical
      << " virtual=" << s.virtual_crossings().size() << "\n";
  return 0;
}

int cmd_ir(const std::string& path, std::ostream& out) {
  auto s = load(path);
  auto classes = ir_partition(s);
  std::string shapes;
  for (const auto& c : classes) {
    if (!shapes.empty()) shapes += ',';
    shapes += to_string(c.shape);
  }
  out << "classes=" << classes.size() << " shapes=" << (shapes.empty() ? "-" : shapes) << "\n";
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& c = classes[k];
    out << "class=" << k + 1 << " members=" << ids_text(c.members) << " walk=" << ids_text(c.walk)
        << " shape=" << to_string(c.shape) << " loop-events=" << c.loop_events << "\n";
  }
  return 0;
}

int cmd_realize(const std::string& path, bool all, std::ostream& out) {
  auto s = load(path);
  auto r = search_realization(s);
  if (all) {
    for (std::uint64_t k = 0; k < r.candidates; ++k) {
      auto a = class_respecting_assignment(r.classes, k);
      out << "candidate=" << k << " assignment=" << assignment_text(a) << "\n";
      print_findings(out, replay_realized(s, a));
    }
  } else if (r.found) {
    out << "candidate=" << r.found_index << " assignment=" << assignment_text(*r.found) << "\n";
    print_findings(out, replay_realized(s, *r.found));
  } else if (r.candidates > 0) {
    auto a = class_respecting_assignment(r.classes, 0);
    out << "candidate=0 assignment=" << assignment_text(a) << "\n";
    print_findings(out, replay_realized(s, a));
  }
  if (!r.found) {
    std::vector<std::size_t> classes;
    for (auto c : r.failure.classes) classes.push_back(c + 1);
    out << "failure type=" << to_string(r.failure.type) << " classes=" << numbers_text(classes)
        << " steps=" << numbers_text(r.failure.steps) << (r.failure.manual_review ? " manual-review" : "") << "\n";
  }
  out << "classes=" << r.classes.size() << " candidates=" << r.candidates
      << " result=" << (r.found ? "found" : "unrealizable") << " type=" << to_string(r.failure.type) << "\n";
  return r.found ? 0 : 2;
}

int cmd_vd(const std::string& path, std::optional<int> base_flag, std::optional<std::string> orient_flag,
           std::ostream& out) {
  SequenceFile f;
  auto s = load(path, &f);
  std::optional<ArcLabel> base;
  Orientation orient = Orientation::forward;
  if (f.basepoint) {
    base = f.basepoint->arc;
    orient = f.basepoint->orientation;
  }
  if (base_flag) base = ArcLabel{*base_flag};
  if (orient_flag) orient = *orient_flag == "fwd" ? Orientation::forward : Orientation::reverse;
  if (!base) throw UsageError("vd: no base point (pass --basepoint or add a basepoint line)");

  out << "basepoint arc=" << raw(*base) << " orient=" << orient_text(orient) << "\n";
  HypothesisCheck h;
  try {
    h = check_vd_hypothesis(s, *base, orient);
  } catch (const DescendingError& e) {
    if (e.kind() != DescendingError::Kind::base_not_fixed) throw;
    out << "base-not-fixed step=" << e.step() << "\n";
    return 2;
  }
  if (!h.holds) {
    out << "hypothesis=fails steps=" << numbers_text(h.violating_steps) << "\n";
    return 2;
  }
  auto a = vd_realize(s, *base, orient);
  out << "hypothesis=holds assignment=" << assignment_text(a) << "\n";
  auto report = replay_realized(s, a);
  for (const auto& v : check_descending_lemmas(s, a, *base, orient)) {
    out << "lemma-violation step=" << v.step << " " << v.what << "\n";
  }
  print_findings(out, report);
  return report.valid() ? 0 : 2;
}

int cmd_maxvirt(const std::string& path, std::uint64_t budget, const std::string& out_path, std::ostream& out) {
  auto s = load(path);
  auto mv = maximal_virtualize(s);
  out << "maxvirt: virtualized=" << ids_text(mv.virtualized) << " steps-rewritten=" << mv.steps_rewritten << "\n";
  if (!out_path.empty()) write_sequence_file(out_path, to_file(mv.sequence));
  const auto& seq = mv.sequence;
  if (!seq.initial().crossings().empty() || !seq.final_diagram().crossings().empty()) {
    out << "switch-free=undecided reason=end-crossings\n";
    return 0;
  }
  auto sf = switch_free_ends(seq, budget);
  out << "switch-free=" << (sf.switch_free ? "yes" : "no") << " candidates=" << sf.candidates
      << " witness=" << ids_text(sf.witness) << "\n";
  out << "note: switch-freeness is checked on the sequence's temporary crossings, not on the end diagrams\n";
  return 0;
}

int cmd_gauss(const std::string& path, std::optional<std::size_t> step, std::ostream& out) {
  auto s = load(path);
  if (step) {
    if (*step < 1 || *step > s.diagram_count()) {
      throw UsageError("gauss: --step must lie in 1.." + std::to_string(s.diagram_count()));
    }
    out << "K" << *step << ": " << gauss_text(s.diagram(*step).gauss_code()) << "\n";
    return 0;
  }
  for (std::size_t k = 1; k <= s.diagram_count(); ++k) {
    out << "K" << k << ": " << gauss_text(s.diagram(k).gauss_code()) << "\n";
  }
  return 0;
}

struct SearchArgs {
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  std::size_t max_moves = 10;
  std::size_t max_crossings = 6;
  std::uint64_t budget = 4096;
  std::string out_dir;
};

int cmd_search(const SearchArgs& a, std::ostream& out) {
  GeneratorParams p;
  p.seed = a.seed;
  p.max_moves = a.max_moves;
  p.max_crossings = a.max_crossings;
  p.require_classical_ends = true;
  auto rep = search_counterexamples(p, a.trials, a.budget);
  std::size_t witnesses = 0;
  for (const auto& t : rep.findings) {
    out << "trial=" << t.trial << " seed=" << t.seed << " moves=" << t.moves << " classes=" << t.classes
        << " type=" << to_string(t.type) << " switch-free=" << to_string(t.switch_free)
        << " virtualized=" << ids_text(t.virtualized) << "\n";
    if (!t.witness) continue;
    ++witnesses;
    out << "CONJECTURE-WITNESS trial=" << t.trial << " seed=" << t.seed << "\n";
    auto text = format_sequence_file(to_file(*t.sequence));
    if (a.out_dir.empty()) {
      out << text;
    } else {
      std::filesystem::create_directories(a.out_dir);
      auto file = a.out_dir + "/witness-" + std::to_string(t.seed) + ".vkr";
      write_sequence_file(file, to_file(*t.sequence));
      out << "written " << file << "\n";
    }
  }
  out << "trials=" << rep.trials << " generated=" << rep.generated << " unrealizable=" << rep.unrealizable
      << " type-i=" << rep.type_i << " type-ii=" << rep.type_ii << " type-iii=" << rep.type_iii
      << " witnesses=" << witnesses << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"vkr: virtual isotopy sequences and their realizations"};
  app.require_subcommand(1);

  std::string file;
  auto* validate = app.add_subcommand("validate", "check that a sequence file describes a valid sequence");
  validate->add_option("file", file, "sequence file")->required();

  auto* ir = app.add_subcommand("ir", "ir classes of the virtual crossings");
  ir->add_option("file", file, "sequence file")->required();

  bool all = false;
  auto* realize = app.add_subcommand("realize", "search for a valid virtual crossing realization");
  realize->add_option("file", file, "sequence file")->required();
  realize->add_flag("--all", all, "report every class-respecting candidate");

  std::optional<int> base;
  std::optional<std::string> orient;
  auto* vd = app.add_subcommand("vd", "virtually descending realization from a base point");
  vd->add_option("file", file, "sequence file")->required();
  vd->add_option("--basepoint", base, "arc of the initial diagram carrying the base point");
  vd->add_option("--orient", orient, "walking direction")->check(CLI::IsMember({"fwd", "rev"}));

  std::uint64_t budget = 4096;
  std::string out_path;
  auto* maxvirt = app.add_subcommand("maxvirt", "maximal sequential virtualization and switch-freeness");
  maxvirt->add_option("file", file, "sequence file")->required();
  maxvirt->add_option("--budget", budget, "largest number of crossing sets to test for switchability")
      ->check(CLI::PositiveNumber);
  maxvirt->add_option("--out", out_path, "write the virtualized sequence here");

  std::optional<std::size_t> step;
  auto* gauss = app.add_subcommand("gauss", "Gauss codes of the diagrams");
  gauss->add_option("file", file, "sequence file")->required();
  gauss->add_option("--step", step, "only diagram K_k");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "random search for counterexamples");
  search->add_option("--seed", sa.seed, "first generator seed");
  search->add_option("--trials", sa.trials, "number of generated sequences");
  search->add_option("--max-moves", sa.max_moves, "moves before the cleanup phase")->check(CLI::PositiveNumber);
  search->add_option("--max-crossings", sa.max_crossings, "crossing cap for generated diagrams")
      ->check(CLI::PositiveNumber);
  search->add_option("--budget", sa.budget, "switchability budget per trial")->check(CLI::PositiveNumber);
  search->add_option("--out", sa.out_dir, "directory for witness files");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "vkr: " << e.what() << "\n";
    return 1;
  }

  try {
    if (validate->parsed()) return cmd_validate(file, out);
    if (ir->parsed()) return cmd_ir(file, out);
    if (realize->parsed()) return cmd_realize(file, all, out);
    if (vd->parsed()) return cmd_vd(file, base, orient, out);
    if (maxvirt->parsed()) return cmd_maxvirt(file, budget, out_path, out);
    if (gauss->parsed()) return cmd_gauss(file, step, out);
    if (search->parsed()) return cmd_search(sa, out);
  } catch (const FormatError& e) {
    err << "vkr: " << file << ": " << e.what() << "\n";
    return 1;
  } catch (const SequenceError& e) {
    err << "vkr: " << file << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "vkr: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace vkr
