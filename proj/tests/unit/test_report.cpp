#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "monostab/report.hpp"
#include "support/models.hpp"

using namespace monostab;
using namespace testsupport;
using nlohmann::json;

namespace {

RunContext ar1_context() {
  RunContext ctx;
  ctx.config = read_config_file(model_path("ar1"));
  ctx.config_hash = config_hash(ctx.config);
  ctx.seed = 7;
  return ctx;
}

StabilityReport ar1_report() {
  CertifyOptions o;
  o.crossing_reps = 5000;
  o.tightness_reps = 200;
  return certify(ar1_uniform(), {shk(0.5), shk(-0.5)}, {.kind = Route::kContraction},
                 {sv(-1), sv(1)}, o);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Report, CertificateHeaderAndVerdict) {
  auto doc = certificate_document(ar1_report(), ar1_context());
  EXPECT_EQ(doc["tool"], "monostab");
  EXPECT_EQ(doc["tool_version"], version());
  EXPECT_EQ(doc["seed"], 7);
  EXPECT_EQ(doc["config_hash"].get<std::string>().size(), 16u);
  EXPECT_EQ(doc["kind"], "certificate");
  EXPECT_EQ(doc["overall"], "certified-modulo-numerics");
  EXPECT_EQ(doc["route"]["name"], "contraction");
  EXPECT_EQ(doc["route"]["evidence"], "contraction");
  EXPECT_EQ(doc["splitting"]["m"], 2);
  EXPECT_EQ(doc["empirical_crossing"]["result"]["mode"], "independent-stream");
}

TEST(Report, NumbersRoundTripExactly) {
  auto report = ar1_report();
  auto text = render(certificate_document(report, ar1_context()));
  auto doc = json::parse(text);
  EXPECT_EQ(doc["splitting"]["prob_bound"].get<double>(), 1.0 / 256.0);
  EXPECT_EQ(doc["splitting"]["C"][0].get<double>(), report.splitting->C[0]);
  const auto& trace = doc["splitting"]["trace_z"];
  for (std::size_t k = 0; k < trace.size(); ++k) {
    ASSERT_EQ(trace[k][0].get<double>(), report.splitting->trace_z[k][0]);
  }
  EXPECT_EQ(text.back(), '\n');
}

TEST(Report, FailedCertificateNamesReason) {
  CertifyOptions o;
  o.crossing_reps = 0;
  auto r = certify(ar1(1.2, Marginal::uniform(-1, 1)), {shk(0.5), shk(-0.5)},
                   {.kind = Route::kContraction}, {sv(-1), sv(1)}, o);
  auto doc = certificate_document(r, ar1_context());
  EXPECT_EQ(doc["overall"], "failed(condition-i-unestablished)");
  EXPECT_EQ(doc["failure_reason"], "condition-i-unestablished");
  EXPECT_FALSE(doc["certified"].get<bool>());
}

TEST(Report, MonteCarloDocuments) {
  auto m = ar1_uniform();
  auto c = coupling_test(m, sv(-1), sv(1), 10, 20, 3);
  auto doc = report_document("coupling", to_json(c), ar1_context());
  EXPECT_EQ(doc["kind"], "coupling");
  EXPECT_EQ(doc["seed"], 7);
  EXPECT_EQ(doc["result"]["mode"], "shared-shock");
  EXPECT_EQ(doc["result"]["violations"], 0);

  auto conv = convergence_report(m, {sv(0), sv(1)}, 10, 100, 1, Metric::kKolmogorov, 0.5, 1);
  auto cj = to_json(conv);
  EXPECT_TRUE(cj.contains("caveat"));
  EXPECT_EQ(cj["metric"], "kolmogorov");

  auto t = tightness_diagnostic(m, {sv(0)}, 10, 10, {1, 3}, 1);
  auto tj = to_json(t);
  EXPECT_TRUE(tj.contains("caveat"));
  EXPECT_EQ(tj["pass"], true);
}

TEST(Report, TrajectoriesCsv) {
  auto m = ar1(0.5, Marginal::point_mass(1.0));
  auto runs = simulate_replications(m, sv(0), 2, 2, 5);
  auto csv = trajectories_csv(runs, ar1_context());
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# monostab " + std::string(version()) + " seed=7 config_hash=", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line, "rep,step,coord_0");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], "0,0,0");
  EXPECT_EQ(rows[1], "0,1,1");
  EXPECT_EQ(rows[2], "0,2,1.5");
  EXPECT_EQ(rows[5], "1,2,1.5");
}

TEST(Report, CsvMultiCoordinateHeader) {
  auto runs = simulate_replications(builtin("ar2"), StateVector{0, 0}, 1, 1, 5);
  auto csv = trajectories_csv(runs, ar1_context());
  EXPECT_NE(csv.find("\nrep,step,coord_0,coord_1\n"), std::string::npos);
}

TEST(Report, AtomicWrite) {
  auto dir = std::filesystem::temp_directory_path() / "monostab_report_test";
  std::filesystem::create_directories(dir);
  auto path = dir / "out.json";
  write_file_atomic(path, "first\n");
  write_file_atomic(path, "second\n");
  EXPECT_EQ(slurp(path), "second\n");
  EXPECT_FALSE(std::filesystem::exists(dir / "out.json.tmp"));
  EXPECT_THROW(write_file_atomic(dir / "missing" / "x.json", "x"), Error);
  std::filesystem::remove_all(dir);
}
