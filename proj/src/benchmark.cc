// SPDX-License-Identifier: Apache-2.0

#include "efp/benchmark.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <thread>

#include "efp/log.h"

namespace efp {
namespace {

std::string Number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string Seconds(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string benchmark_csv_header() {
  return "instance_id,model,formulation,size,status,incumbent,bound,gap,nodes,"
         "wall_seconds,root_relaxation,root_relaxation_seconds";
}

std::string to_csv(const BenchmarkRow& row) {
  std::string out = row.instance_id;
  out += ',' + row.model;
  out += ',' + row.formulation;
  out += ',' + std::to_string(row.size);
  out += ',' + row.status;
  out += ',' + Number(row.incumbent);
  out += ',' + Number(row.bound);
  out += ',' + Number(row.gap);
  out += ',' + std::to_string(row.nodes);
  out += ',' + Seconds(row.wall_seconds);
  out += ',' + Number(row.root_relaxation);
  out += ',' + Seconds(row.root_relaxation_seconds);
  return out;
}

BenchmarkRow make_benchmark_row(std::string instance_id, std::string model,
                                int size, FormulationKind kind,
                                const MipResult& result) {
  BenchmarkRow row;
  row.instance_id = std::move(instance_id);
  row.model = std::move(model);
  row.formulation = std::string(to_string(kind));
  row.size = size;
  row.status = std::string(to_string(result.status));
  row.incumbent = result.incumbent_value;
  row.bound = result.best_bound;
  row.gap = result.gap;
  row.nodes = result.nodes;
  row.wall_seconds = result.wall_seconds;
  row.root_relaxation = result.root_relaxation;
  row.root_relaxation_seconds = result.root_relaxation_seconds;
  return row;
}

std::string aggregate_csv_header() {
  return "size,formulation,count,solved,mean_gap,mean_root_relaxation_seconds";
}

std::string to_csv(const AggregateRow& row) {
  return std::to_string(row.size) + ',' + row.formulation + ',' +
         std::to_string(row.count) + ',' + std::to_string(row.solved) + ',' +
         Number(row.mean_gap) + ',' + Seconds(row.mean_root_relaxation_seconds);
}

std::vector<AggregateRow> aggregate(const std::vector<BenchmarkRow>& rows) {
  std::vector<AggregateRow> out;
  std::vector<int> measured;
  for (const BenchmarkRow& row : rows) {
    std::size_t k = 0;
    while (k < out.size() &&
           (out[k].size != row.size || out[k].formulation != row.formulation)) {
      ++k;
    }
    if (k == out.size()) {
      out.push_back({row.size, row.formulation, 0, 0, 0.0, 0.0});
      measured.push_back(0);
    }
    AggregateRow& agg = out[k];
    ++agg.count;
    if (row.status == "error") continue;
    if (row.status == "optimal") ++agg.solved;
    agg.mean_gap += row.gap;
    agg.mean_root_relaxation_seconds += row.root_relaxation_seconds;
    ++measured[k];
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (measured[k] == 0) {
      out[k].mean_gap = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    out[k].mean_gap /= measured[k];
    out[k].mean_root_relaxation_seconds /= measured[k];
  }
  return out;
}

std::string benchmark_instance_id(MarketModel model, int size, Seed seed) {
  return std::string(to_string(model)) + "-n" + std::to_string(size) + "-s" +
         std::to_string(seed);
}

std::vector<BenchmarkRow> run_benchmark(
    const BenchmarkConfig& config,
    const std::function<void(const BenchmarkRow&)>& on_row) {
  struct Task {
    int size;
    Seed seed;
    FormulationKind kind;
  };
  std::vector<Task> tasks;
  for (int size : config.sizes) {
    for (int s = 0; s < config.seeds; ++s) {
      for (FormulationKind kind : config.formulations) {
        tasks.push_back({size, config.first_seed + static_cast<Seed>(s), kind});
      }
    }
  }

  std::vector<BenchmarkRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex writer;
  const std::string model(to_string(config.model));

  auto work = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const Task& task = tasks[t];
      const std::string id = benchmark_instance_id(config.model, task.size, task.seed);
      BenchmarkRow row;
      try {
        const Instance inst = generate(preset(config.model, task.size), task.seed);
        const Formulation f(inst, task.kind, config.build);
        row = make_benchmark_row(id, model, task.size, task.kind,
                                 solve_mip(inst, f, config.limits));
      } catch (const std::exception& e) {
        EFP_LOG(kError, id << " " << to_string(task.kind) << ": " << e.what());
        row.instance_id = id;
        row.model = model;
        row.formulation = std::string(to_string(task.kind));
        row.size = task.size;
        row.status = "error";
        row.incumbent = row.bound = row.gap = row.root_relaxation =
            std::numeric_limits<double>::quiet_NaN();
      }
      std::lock_guard<std::mutex> lock(writer);
      EFP_LOG(kInfo, id << " " << row.formulation << " " << row.status
                        << " in " << row.wall_seconds << "s");
      if (on_row) on_row(row);
      rows[t] = std::move(row);
    }
  };

  const int threads = std::max(1, std::min<int>(config.threads,
                                                static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < threads; ++k) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace efp
