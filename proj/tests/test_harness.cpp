#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>

#include "support.hpp"
#include "vkr/cli.hpp"
#include "vkr/search.hpp"

using namespace vkr;

namespace {

struct CliRun {
  int status = 0;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> valid_fixtures() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(VKR_FIXTURE_DIR)) {
    if (e.is_regular_file() && e.path().extension() == ".vkr") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t format_error_line(const std::string& text) {
  try {
    parse_sequence_file(text);
  } catch (const FormatError& e) {
    return e.line();
  }
  FAIL("expected a FormatError");
  return 0;
}

}  // namespace

TEST_CASE("sequence files round-trip") {
  auto files = valid_fixtures();
  CHECK(files.size() >= 5);
  for (const auto& path : files) {
    auto f = read_sequence_file(path);
    auto text = format_sequence_file(f);
    CHECK(parse_sequence_file(text) == f);
    CHECK(format_sequence_file(parse_sequence_file(text)) == text);
    auto s = build_sequence(f);
    CHECK(build_sequence(to_file(s)).step_count() == s.step_count());
  }
}

TEST_CASE("sequence file directives") {
  auto f = parse_sequence_file("vkr 1\n# comment\n\ninit O(1)\nmove vI+ arc=1 side=L id=1\nbasepoint arc=1 orient=rev\n");
  CHECK(f.moves.size() == 1);
  REQUIRE(f.basepoint.has_value());
  CHECK(f.basepoint->arc == ArcLabel{1});
  CHECK(f.basepoint->orientation == Orientation::reverse);
  CHECK(format_error_line("init O(1)\n") == 1);
  CHECK(format_error_line("vkr 1\ninit O(1)\nmove vI+ arc=1 side=L\n") == 3);
  CHECK(format_error_line("vkr 1\ninit O(1)\nbasepoint arc=1 orient=up\n") == 3);
  CHECK(format_error_line("vkr 1\ninit O(1)\nfrobnicate\n") == 3);
}

TEST_CASE("generator is deterministic and valid") {
  GeneratorParams p;
  p.require_classical_ends = true;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    p.seed = seed;
    std::optional<IsotopySequence> a;
    try {
      a = random_sequence(p);
    } catch (const GeneratorError&) {
      CHECK_THROWS_AS(random_sequence(p), GeneratorError);
      continue;
    }
    auto b = random_sequence(p);
    CHECK(format_sequence_file(to_file(*a)) == format_sequence_file(to_file(b)));
    CHECK(a->final_diagram().virtual_count() == 0);
    CHECK(build_sequence(to_file(*a)).step_count() == a->step_count());
  }
}

TEST_CASE("uniform_below stays in range") {
  std::mt19937_64 rng(1);
  std::array<int, 3> counts{};
  for (int k = 0; k < 3000; ++k) ++counts[uniform_below(rng, 3)];
  for (int c : counts) CHECK(c > 800);
}

TEST_CASE("empty search") {
  GeneratorParams p;
  auto rep = search_counterexamples(p, 0);
  CHECK(rep.trials == 0);
  CHECK(rep.generated == 0);
  CHECK(rep.findings.empty());
}

TEST_CASE("cli: FIG8") {
  auto fig8 = testing::fixture_path("fig8.vkr");
  auto ir = cli({"ir", fig8});
  CHECK(ir.status == 0);
  CHECK(ir.out.rfind("classes=1 shapes=path\n", 0) == 0);

  auto realize = cli({"realize", fig8});
  CHECK(realize.status == 2);
  CHECK(realize.out.find("classes=1 candidates=2 result=unrealizable type=i\n") != std::string::npos);
  CHECK(realize.out.find("fail=delta") != std::string::npos);
  CHECK(realize.out.find("verdict=invalid") != std::string::npos);

  auto all = cli({"realize", fig8, "--all"});
  CHECK(all.status == 2);
  CHECK(all.out.find("candidate=1 ") != std::string::npos);

  auto vd = cli({"vd", fig8, "--basepoint", "5", "--orient", "fwd"});
  CHECK(vd.status == 2);
  CHECK(vd.out.find("hypothesis=fails") != std::string::npos);

  auto validate = cli({"validate", fig8});
  CHECK(validate.status == 0);
  CHECK(validate.out == "ok steps=8 diagrams=9 crossings=5 classical=2 virtual=3\n");
}

TEST_CASE("cli: realizable and descending fixtures") {
  auto fig1 = cli({"realize", testing::fixture_path("fig1.vkr")});
  CHECK(fig1.status == 0);
  CHECK(fig1.out.find("result=found type=-") != std::string::npos);

  auto vd = cli({"vd", testing::fixture_path("descending.vkr")});
  CHECK(vd.status == 0);
  CHECK(vd.out.find("hypothesis=holds") != std::string::npos);
  CHECK(vd.out.find("verdict=valid") != std::string::npos);

  auto maxvirt = cli({"maxvirt", testing::fixture_path("fig8_extended.vkr")});
  CHECK(maxvirt.status == 0);
  CHECK(maxvirt.out.rfind("maxvirt: virtualized=1,2 steps-rewritten=", 0) == 0);
  CHECK(maxvirt.out.find("switch-free=yes") != std::string::npos);

  auto gauss = cli({"gauss", testing::fixture_path("kinks.vkr"), "--step", "2"});
  CHECK(gauss.status == 0);
  CHECK(gauss.out == "K2: U1- O1-\n");
}

TEST_CASE("cli: invalid input") {
  for (const auto& e : std::filesystem::directory_iterator(std::string(VKR_FIXTURE_DIR) + "/invalid")) {
    auto r = cli({"validate", e.path().string()});
    CHECK(r.status == 1);
    CHECK_FALSE(r.err.empty());
    CHECK(r.out.empty());
  }
  CHECK(cli({}).status == 1);
  CHECK(cli({"frobnicate"}).status == 1);
  CHECK(cli({"validate"}).status == 1);
  CHECK(cli({"validate", "/nonexistent/file.vkr"}).status == 1);
  CHECK(cli({"vd", testing::fixture_path("fig1.vkr")}).status == 1);
  CHECK(cli({"vd", testing::fixture_path("fig1.vkr"), "--basepoint", "1", "--orient", "up"}).status == 1);
  CHECK(cli({"gauss", testing::fixture_path("fig1.vkr"), "--step", "99"}).status == 1);
  CHECK(cli({"search", "--max-moves", "0"}).status == 1);
}

TEST_CASE("cli: search") {
  auto r = cli({"search", "--seed", "1", "--trials", "30", "--max-moves", "8"});
  CHECK(r.status == 0);
  CHECK(r.out.find("trials=30 ") != std::string::npos);
  CHECK(r.out.find("CONJECTURE-WITNESS") == std::string::npos);
}

TEST_CASE("cli output is deterministic") {
  for (const auto& path : valid_fixtures()) {
    for (const auto& cmd : {"validate", "ir", "realize", "maxvirt", "gauss"}) {
      auto a = cli({cmd, path});
      auto b = cli({cmd, path});
      CHECK(a.status == b.status);
      CHECK(a.out == b.out);
    }
  }
}
