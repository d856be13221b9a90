// SPDX-License-Identifier: Apache-2.0
//
// Benchmark rows and the harness that produces them. CSV columns, in order:
//
//   instance_id,model,formulation,size,status,incumbent,bound,gap,nodes,
//   wall_seconds,root_relaxation,root_relaxation_seconds

#ifndef EFP_BENCHMARK_H_
#define EFP_BENCHMARK_H_

#include <functional>
#include <string>
#include <vector>

#include "efp/branch_and_bound.h"
#include "efp/formulations.h"
#include "efp/generators.h"

namespace efp {

struct BenchmarkRow {
  std::string instance_id;
  std::string model;
  std::string formulation;
  int size = 0;
  // "optimal", "feasible", "infeasible" or "error".
  std::string status;
  double incumbent = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  long nodes = 0;
  double wall_seconds = 0.0;
  double root_relaxation = 0.0;
  double root_relaxation_seconds = 0.0;
};

std::string benchmark_csv_header();
std::string to_csv(const BenchmarkRow& row);

BenchmarkRow make_benchmark_row(std::string instance_id, std::string model,
                                int size, FormulationKind kind,
                                const MipResult& result);

struct AggregateRow {
  int size = 0;
  std::string formulation;
  int count = 0;
  int solved = 0;
  double mean_gap = 0.0;
  double mean_root_relaxation_seconds = 0.0;
};

std::string aggregate_csv_header();
std::string to_csv(const AggregateRow& row);

// One row per (size, formulation) in order of first appearance. Rows with
// status "error" count towards `count` but not the means.
std::vector<AggregateRow> aggregate(const std::vector<BenchmarkRow>& rows);

struct BenchmarkConfig {
  MarketModel model = MarketModel::kPopularity;
  std::vector<int> sizes;
  int seeds = 1;
  Seed first_seed = 1;
  std::vector<FormulationKind> formulations;
  MipLimits limits;
  BuildOptions build;
  int threads = 1;
};

std::string benchmark_instance_id(MarketModel model, int size, Seed seed);

// Solves every (size, seed, formulation) combination. Rows come back ordered
// by size, seed, then formulation. `on_row`, if set, sees each row as soon as
// it is finished; calls are serialized.
std::vector<BenchmarkRow> run_benchmark(
    const BenchmarkConfig& config,
    const std::function<void(const BenchmarkRow&)>& on_row = {});

}  // namespace efp

#endif  // EFP_BENCHMARK_H_
