#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "support/models.hpp"

using testsupport::model_path;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = monostab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "monostab_cli_test";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::ofstream(p) << content;
  return p;
}

// keep the certify runs in unit tests short
const std::vector<std::string> kQuick{"--crossing-reps", "5000", "--tightness-reps", "200"};

std::vector<std::string> certify_args(const std::string& model, std::vector<std::string> extra = {}) {
  std::vector<std::string> a{"certify", "--model", model_path(model)};
  a.insert(a.end(), kQuick.begin(), kQuick.end());
  a.insert(a.end(), extra.begin(), extra.end());
  return a;
}

}  // namespace

TEST(Cli, CertifyAr1) {
  auto r = run_cli(certify_args("ar1", {"--pair", "0.5", "-0.5", "--route", "contraction", "--seed", "7"}));
  ASSERT_EQ(r.code, monostab::cli::kPass) << r.err;
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["splitting"]["m"], 2);
  EXPECT_EQ(doc["splitting"]["prob_bound"].get<double>(), 1.0 / 256.0);
  EXPECT_EQ(doc["seed"], 7);
}

TEST(Cli, CertifyExpandingExitsTwo) {
  auto r = run_cli(certify_args("ar1_expanding"));
  EXPECT_EQ(r.code, monostab::cli::kVerdictFailed);
  EXPECT_NE(r.err.find("condition-i-unestablished"), std::string::npos);
  EXPECT_EQ(json::parse(r.out)["failure_reason"], "condition-i-unestablished");
}

TEST(Cli, MalformedJsonExitsOneWithPath) {
  auto p = temp_file("bad.json", "{\"family\": \"ar1\", ");
  auto r = run_cli({"certify", "--model", p.string()});
  EXPECT_EQ(r.code, monostab::cli::kUsage);
  EXPECT_NE(r.err.find("$"), std::string::npos);
}

TEST(Cli, SchemaErrorNamesField) {
  auto p = temp_file("schema.json",
                     R"({"family": "ar1", "params": {"A": [[0.5, -1]]}, "shocks": [{"type": "uniform", "a": -1, "b": 1}]})");
  auto r = run_cli({"certify", "--model", p.string()});
  EXPECT_EQ(r.code, monostab::cli::kUsage);
  EXPECT_NE(r.err.find("$.params.A[0]"), std::string::npos) << r.err;
}

TEST(Cli, MissingModelFile) {
  EXPECT_EQ(run_cli({"certify", "--model", "/nonexistent.json"}).code, monostab::cli::kUsage);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, monostab::cli::kUsage);
  EXPECT_EQ(run_cli({"certify"}).code, monostab::cli::kUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, monostab::cli::kUsage);
  EXPECT_EQ(run_cli(certify_args("ar1", {"--route", "teleport"})).code, monostab::cli::kUsage);
  EXPECT_EQ(run_cli(certify_args("ar1", {"--pair", "0.5"})).code, monostab::cli::kUsage);
  EXPECT_EQ(run_cli({"tightness", "--model", model_path("ar1"), "--radii", "3,1"}).code,
            monostab::cli::kUsage);
  EXPECT_EQ(run_cli({"--help"}).code, monostab::cli::kPass);
}

TEST(Cli, ModelsListAndDescribe) {
  auto list = run_cli({"models", "list"});
  EXPECT_EQ(list.code, 0);
  EXPECT_EQ(std::count(list.out.begin(), list.out.end(), '\n'), 5);
  auto d = run_cli({"models", "describe", "ar1"});
  EXPECT_EQ(d.code, 0);
  EXPECT_NE(d.out.find("||A||_inf"), std::string::npos);
  EXPECT_EQ(run_cli({"models", "describe", "foo"}).code, monostab::cli::kUsage);
}

TEST(Cli, Couple) {
  auto r = run_cli({"couple", "--model", model_path("ar1"), "--x-low", "-1", "--x-high", "1",
                    "--horizon", "100", "--reps", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["result"]["violations"], 0);
  EXPECT_EQ(doc["kind"], "coupling");
}

TEST(Cli, Converge) {
  auto r = run_cli({"converge", "--model", model_path("ar1"), "--starts", "-10,0,10", "--threshold",
                    "0.05", "--samples", "20000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out)["result"]["pass"].get<bool>());
}

TEST(Cli, TightnessUnstableExitsTwo) {
  auto r = run_cli({"tightness", "--model", model_path("ar1_unstable"), "--reps", "100"});
  EXPECT_EQ(r.code, monostab::cli::kVerdictFailed);
  EXPECT_FALSE(json::parse(r.out)["result"]["pass"].get<bool>());
}

TEST(Cli, SimulateCsv) {
  auto r = run_cli({"simulate", "--model", model_path("ar1"), "--x0", "0", "--horizon", "5",
                    "--reps", "2", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("# monostab ", 0), 0u);
  EXPECT_NE(r.out.find("seed=3"), std::string::npos);
  EXPECT_NE(r.out.find("\nrep,step,coord_0\n"), std::string::npos);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2 + 2 * 6);
}

TEST(Cli, OutFileAndVerdictLine) {
  auto dir = std::filesystem::temp_directory_path() / "monostab_cli_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "cert.json").string();
  auto r = run_cli(certify_args("ar1", {"--out", path}));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "certified-modulo-numerics\n");
  std::ifstream in(path);
  EXPECT_EQ(json::parse(in)["overall"], "certified-modulo-numerics");
}

TEST(Cli, SeedPrecedence) {
  auto seed_of = [](std::vector<std::string> extra) {
    std::vector<std::string> a{"couple", "--model", model_path("ar1"), "--reps", "5", "--horizon", "3"};
    a.insert(a.end(), extra.begin(), extra.end());
    auto r = run_cli(a);
    return json::parse(r.out)["seed"].get<std::uint64_t>();
  };
  ::unsetenv("MONOSTAB_SEED");
  EXPECT_EQ(seed_of({}), 12345u);
  ::setenv("MONOSTAB_SEED", "99", 1);
  EXPECT_EQ(seed_of({}), 99u);
  EXPECT_EQ(seed_of({"--seed", "4"}), 4u);
  ::unsetenv("MONOSTAB_SEED");
}

TEST(Cli, FlagOverridesRunSection) {
  // ar1.json sets route contraction; the flag wins
  auto r = run_cli(certify_args("ar1", {"--route", "direct"}));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["route"]["name"], "direct");
  auto d = run_cli(certify_args("ar1"));
  EXPECT_EQ(json::parse(d.out)["route"]["name"], "contraction");
}

TEST(Cli, ByteIdenticalAcrossRunsAndWorkers) {
  auto a = run_cli(certify_args("rca1", {"--workers", "1", "--seed", "5"}));
  auto b = run_cli(certify_args("rca1", {"--workers", "1", "--seed", "5"}));
  auto c = run_cli(certify_args("rca1", {"--workers", "8", "--seed", "5"}));
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  auto other = run_cli(certify_args("rca1", {"--workers", "1", "--seed", "6"}));
  EXPECT_NE(a.out, other.out);
}

TEST(Cli, ConcaveRouteFromFlags) {
  auto r = run_cli(certify_args("resource", {"--route", "concave", "--a", "0.01", "--b", "4"}));
  EXPECT_EQ(r.code, 0) << r.err;
}
