// SPDX-License-Identifier: Apache-2.0

#include "efp/benchmark.h"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace efp {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<BenchmarkRow> GoldenRows() {
  return {
      {"three_items", "file", "U", 4, "optimal", 21, 21, 0, 3, 0.0125, 24.5, 0.000375},
      {"popularity-n10-s3", "popularity", "STM", 10, "feasible", 12.125, 13.5,
       0.1134020619, 811, 60.000001, 17.333333333333, 0.5},
      {"popularity-n10-s3", "popularity", "L", 10, "error", kNaN, kNaN, kNaN, 0, 0, kNaN, 0},
  };
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(BenchmarkCsvTest, MatchesGoldenFile) {
  std::string text = benchmark_csv_header() + "\n";
  for (const BenchmarkRow& row : GoldenRows()) text += to_csv(row) + "\n";
  text += "\n" + aggregate_csv_header() + "\n";
  for (const AggregateRow& row : aggregate(GoldenRows())) text += to_csv(row) + "\n";
  EXPECT_EQ(text, ReadFile(std::string(EFP_TEST_DATA_DIR) + "/benchmark_golden.csv"));
}

TEST(BenchmarkCsvTest, HeaderColumnsMatchRowFields) {
  const auto commas = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
  for (const BenchmarkRow& row : GoldenRows()) {
    EXPECT_EQ(commas(to_csv(row)), commas(benchmark_csv_header()));
  }
  EXPECT_EQ(commas(to_csv(AggregateRow{})), commas(aggregate_csv_header()));
}

TEST(AggregateTest, GroupsAndAverages) {
  std::vector<BenchmarkRow> rows;
  auto add = [&](int size, std::string f, std::string status, double gap, double root) {
    BenchmarkRow r;
    r.size = size;
    r.formulation = std::move(f);
    r.status = std::move(status);
    r.gap = gap;
    r.root_relaxation_seconds = root;
    rows.push_back(r);
  };
  add(10, "U", "optimal", 0, 1);
  add(10, "STM", "feasible", 0.5, 4);
  add(10, "U", "feasible", 0.2, 3);
  add(15, "U", "error", kNaN, 0);
  add(10, "STM", "error", kNaN, 0);
  const auto agg = aggregate(rows);
  ASSERT_EQ(agg.size(), 3u);
  EXPECT_EQ(agg[0].formulation, "U");
  EXPECT_EQ(agg[0].count, 2);
  EXPECT_EQ(agg[0].solved, 1);
  EXPECT_DOUBLE_EQ(agg[0].mean_gap, 0.1);
  EXPECT_DOUBLE_EQ(agg[0].mean_root_relaxation_seconds, 2);
  EXPECT_EQ(agg[1].formulation, "STM");
  EXPECT_EQ(agg[1].count, 2);
  EXPECT_EQ(agg[1].solved, 0);
  EXPECT_DOUBLE_EQ(agg[1].mean_gap, 0.5);
  EXPECT_EQ(agg[2].size, 15);
  EXPECT_EQ(agg[2].count, 1);
  EXPECT_TRUE(std::isnan(agg[2].mean_gap));
}

TEST(RunBenchmarkTest, CountsAndOrder) {
  BenchmarkConfig config;
  config.model = MarketModel::kPopularity;
  config.sizes = {10, 15};
  config.seeds = 5;
  config.formulations = {FormulationKind::kSTM, FormulationKind::kU};
  config.limits.time_seconds = 0.2;
  config.threads = 4;
  int streamed = 0;
  std::set<std::string> seen;
  const auto rows = run_benchmark(config, [&](const BenchmarkRow& row) {
    ++streamed;
    seen.insert(row.instance_id + "/" + row.formulation);
  });
  ASSERT_EQ(rows.size(), 20u);
  EXPECT_EQ(streamed, 20);
  EXPECT_EQ(seen.size(), 20u);
  EXPECT_EQ(rows[0].instance_id, "popularity-n10-s1");
  EXPECT_EQ(rows[0].formulation, "STM");
  EXPECT_EQ(rows[1].formulation, "U");
  EXPECT_EQ(rows[19].instance_id, "popularity-n15-s5");
  for (const BenchmarkRow& row : rows) {
    EXPECT_NE(row.status, "error");
    EXPECT_GE(row.bound, row.incumbent - 1e-6);
  }
  const auto agg = aggregate(rows);
  ASSERT_EQ(agg.size(), 4u);
  for (const AggregateRow& a : agg) EXPECT_EQ(a.count, 5);
}

TEST(RunBenchmarkTest, ThreadCountDoesNotChangeResults) {
  BenchmarkConfig config;
  config.model = MarketModel::kCharacteristics;
  config.sizes = {6};
  config.seeds = 4;
  config.formulations = {FormulationKind::kP, FormulationKind::kU};
  const auto serial = run_benchmark(config);
  config.threads = 3;
  const auto parallel = run_benchmark(config);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t k = 0; k < serial.size(); ++k) {
    EXPECT_EQ(serial[k].instance_id, parallel[k].instance_id);
    EXPECT_EQ(serial[k].incumbent, parallel[k].incumbent);
    EXPECT_EQ(serial[k].nodes, parallel[k].nodes);
  }
}

// Pinned corpus: popularity sizes 4..12, seeds 1..4, node budget 40. Node
// limits keep the outcome independent of machine speed.
TEST(RunBenchmarkTest, SolvedCountNonIncreasingOnPinnedCorpus) {
  BenchmarkConfig config;
  config.model = MarketModel::kPopularity;
  config.sizes = {4, 8, 12};
  config.seeds = 4;
  config.formulations = {FormulationKind::kSTM, FormulationKind::kU};
  config.limits.time_seconds = 1e9;
  config.limits.max_nodes = 40;
  config.threads = 4;
  const auto agg = aggregate(run_benchmark(config));
  for (const char* f : {"STM", "U"}) {
    int previous = std::numeric_limits<int>::max();
    for (const AggregateRow& a : agg) {
      if (a.formulation != f) continue;
      EXPECT_LE(a.solved, previous) << f << " size " << a.size;
      previous = a.solved;
    }
  }
}

TEST(BenchmarkIdTest, Format) {
  EXPECT_EQ(benchmark_instance_id(MarketModel::kPopularity, 10, 3), "popularity-n10-s3");
  EXPECT_EQ(benchmark_instance_id(MarketModel::kNeighborhood, 5, 12), "neighborhood-n5-s12");
}

}  // namespace
}  // namespace efp
