#include "hmf/cli.hpp"
#include "hmf/harness.hpp"
#include "hmf/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hmf;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name)
      : path(std::filesystem::temp_directory_path() / ("hmf_test_" + std::to_string(::getpid()) + "_" + name)) {}
  ~TempFile() { std::filesystem::remove(path); }
  std::string read() const {
    std::ifstream f(path);
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
  }
};

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "hmf");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("comparisons and finalize") {
  CHECK(compare(1.0, Comparison::LessEqual, 1.0));
  CHECK_FALSE(compare(1.0, Comparison::Less, 1.0));
  CHECK(compare(2.0, Comparison::Greater, 1.0));
  CHECK(compare(3.0, Comparison::Equal, 3.0));
  CHECK_FALSE(compare(std::nan(""), Comparison::LessEqual, 1.0));
  VerificationReport r;
  r.measured = 0.5;
  r.threshold = 1.0;
  r.comparison = Comparison::Less;
  finalize(r);
  CHECK(r.status == CheckStatus::Pass);
  r.status = CheckStatus::Skipped;
  finalize(r);
  CHECK(r.status == CheckStatus::Skipped);
  CHECK(suite_exit_code({r}) == 0);
  r.status = CheckStatus::Inconclusive;
  CHECK(suite_exit_code({r}) == 1);
}

TEST_CASE("threshold table") {
  auto t = default_thresholds();
  CHECK(t.version == "1");
  CHECK(t.at("kernel.multiplicativity") == 1e-10);
  t.set("kernel.multiplicativity=1e-8");
  CHECK(t.at("kernel.multiplicativity") == 1e-8);
  CHECK_THROWS(t.set("nonsense"));
  CHECK_THROWS(t.set("kernel.multiplicativity=abc"));
  CHECK_THROWS(t.at("no.such.threshold"));
}

TEST_CASE("samplers stay in their regions") {
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    const auto x = sample_strip_point(rng, 5);
    REQUIRE(in_strip(x, 0.25));
    const auto y = sample_interior_point(rng, 4);
    REQUIRE(y[4] >= 1.0);
    REQUIRE(y[4] <= 2.0);
    REQUIRE(std::abs(y[1]) <= 0.5);
  }
  for (const auto& g : {GroupDescriptor::principal(4, 1, 3), GroupDescriptor::theta(4, 1), GroupDescriptor::lower0(4, 2, 2)}) {
    for (int k = 0; k < 20; ++k) REQUIRE(is_member(sample_group_element(rng, g, 4), g));
  }
  CHECK(is_gamma_p_word(sample_gamma_p_word(rng, 4, 2, 6), 2));
}

TEST_CASE("independent c = 0 counts") {
  CHECK(c_zero_count_by_membership(GroupDescriptor::full(4, 1)) == 4);
  CHECK(c_zero_count_by_membership(GroupDescriptor::full(5, 2)) == 8);
  CHECK(c_zero_count_by_membership(GroupDescriptor::principal(4, 1, 3)) == 1);
  CHECK(c_zero_count_by_membership(GroupDescriptor::principal(4, 1, 2)) == 2);
}

TEST_CASE("report pass flags are recomputable") {
  HarnessConfig cfg;
  for (const auto& r : run_named_check("cosets", SuiteOptions{}, cfg)) {
    const auto j = to_json(r);
    const double measured = j.contains("residual") ? j["residual"].get<double>() : j["count"].get<double>();
    const double threshold = j.contains("threshold") ? j["threshold"].get<double>() : j["target"].get<double>();
    if (r.status == CheckStatus::Pass || r.status == CheckStatus::Fail) {
      CHECK(j["pass"].get<bool>() == compare(measured, r.comparison, threshold));
    }
  }
}

TEST_CASE("a check fails when its threshold is tightened") {
  HarnessConfig cfg;
  cfg.thresholds.set("kernel.multiplicativity=1e-30");
  const auto r = check_kernel_multiplicativity(4, 1, 50, cfg);
  CHECK(r.status == CheckStatus::Fail);
  CHECK(r.threshold == 1e-30);
}

TEST_CASE("points parsing") {
  const auto pts = parse_points("# header\n1, 2 ,3\n\n4\t5 6 # tail\n");
  REQUIRE(pts.size() == 2);
  CHECK(pts[1] == std::vector<double>{4, 5, 6});
  CHECK_THROWS(parse_points("1, x"));
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("usage errors exit 2") {
  CHECK(run({"cosets", "--bogus"}) == 2);
  CHECK(run({}) == 2);
  CHECK(run({"cosets", "--group", "nope"}) == 2);
  CHECK(run({"eval", "--series", "scalar", "--s", "1", "--n", "5", "--x", "0,0,0,0,1"}) == 2);
  CHECK(run({"verify"}) == 2);
  CHECK(run({"cosets", "--n", "4", "--p", "4"}) == 2);
}

TEST_CASE("cosets json") {
  TempFile out("cosets.json");
  REQUIRE(run({"cosets", "--n", "4", "--p", "1", "--group", "full", "--maxlen", "6", "--outfile", out.path.string()}) == 0);
  const auto j = ojson::parse(out.read());
  int c0 = 0;
  for (const auto& rep : j) c0 += rep["c_zero"].get<bool>();
  CHECK(c0 == 4);
  CHECK(j.size() == enumerate_cosets(GroupDescriptor::full(4, 1), 6).size());
  CHECK(j[0].contains("matrix"));
}

TEST_CASE("eval csv and json") {
  TempFile csv("eval.csv");
  REQUIRE(run({"eval", "--series", "scalar", "--n", "5", "--s", "2", "--x", "0,0,0,0,1", "--x", "0.1,0,0,0,2", "--out",
               "csv", "--outfile", csv.path.string()}) == 0);
  std::istringstream lines(csv.read());
  std::string header, row;
  std::getline(lines, header);
  CHECK(header == "x1,x2,x3,x4,x5,1");
  int rows = 0;
  while (std::getline(lines, row)) ++rows;
  CHECK(rows == 2);

  TempFile js("eval.json");
  REQUIRE(run({"eval", "--series", "zeta", "--n", "4", "--m", "3,0,0,0", "--box", "2", "--outfile", js.path.string()}) == 0);
  const auto j = ojson::parse(js.read());
  CHECK(j.size() == 1);
  CHECK(j[0]["value"].contains("components"));
}

TEST_CASE("verify exit codes and determinism") {
  TempFile a("a.json"), b("b.json");
  CHECK(run({"verify", "--check", "clifford", "--deterministic", "--outfile", a.path.string()}) == 0);
  CHECK(run({"verify", "--check", "clifford", "--deterministic", "--outfile", b.path.string()}) == 0);
  CHECK(a.read() == b.read());
  const auto j = ojson::parse(a.read());
  for (const auto& r : j) CHECK(r["seconds"].get<double>() == 0.0);
  CHECK(run({"verify", "--check", "multiplicativity", "--threshold", "kernel.multiplicativity=1e-30", "--outfile",
             a.path.string()}) == 1);
  CHECK(run({"verify", "--check", "clifford", "--threshold", "junk", "--outfile", a.path.string()}) == 2);
}

TEST_CASE("limits subcommand") {
  TempFile out("limits.csv");
  CHECK(run({"limits", "--series", "scalar", "--n", "5", "--s", "2", "--maxlen", "6", "--out", "csv", "--outfile",
             out.path.string()}) == 0);
  CHECK(out.read().rfind("check,status", 0) == 0);
}

}  // TEST_SUITE
