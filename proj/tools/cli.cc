// SPDX-License-Identifier: Apache-2.0

#include "cli.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "efp/benchmark.h"
#include "efp/branch_and_bound.h"
#include "efp/formulations.h"
#include "efp/generators.h"
#include "efp/geometric.h"
#include "efp/instance_io.h"
#include "efp/log.h"
#include "efp/oracle.h"
#include "efp/relaxations.h"

namespace efp {
namespace {

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

struct GlobalOptions {
  Seed seed = 1;
  std::string output;
  double time_limit = 60.0;
  double tolerance = 1e-6;
  bool no_price_bound = false;

  BuildOptions build() const {
    BuildOptions b;
    b.price_upper_bound = !no_price_bound;
    return b;
  }
  MipLimits limits() const {
    MipLimits l;
    l.time_seconds = time_limit;
    return l;
  }
};

std::string Fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string JoinPrices(const Pricing& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) s += ' ';
    s += Fmt(p[i]);
  }
  return s;
}

// Writes CSV lines to the --output file, or to `out` when none was given. A
// header goes first unless the file already has content.
class CsvSink {
 public:
  CsvSink(const std::string& path, std::ostream& out, std::string header)
      : out_(&out) {
    if (!path.empty()) {
      const bool fresh = !std::filesystem::exists(path) ||
                         std::filesystem::file_size(path) == 0;
      file_.open(path, std::ios::app);
      if (!file_) throw UsageError("cannot write " + path);
      out_ = &file_;
      if (!fresh) return;
    }
    *out_ << header << '\n';
  }
  void write(const std::string& line) { *out_ << line << '\n' << std::flush; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

// generate -------------------------------------------------------------------

struct GenerateArgs {
  std::string model;
  int n = 0;
  std::optional<int> items, c, o, p_pref;
  std::optional<double> ell, h, d, r, M, Q;
  std::optional<long long> e;
};

template <typename T, typename U>
void Override(T& field, const std::optional<U>& value) {
  if (value) field = *value;
}

GeneratorConfig BuildConfig(const GenerateArgs& a) {
  const MarketModel model = parse_market_model(a.model);
  if (a.n < 2) throw UsageError("--n must be at least 2");
  GeneratorConfig cfg = preset(model, a.n);
  auto reject = [](bool set, const char* flag, std::string_view model_name) {
    if (set) {
      throw UsageError(std::string(flag) + " does not apply to the " +
                       std::string(model_name) + " model");
    }
  };
  const std::string_view name = to_string(model);
  if (auto* c = std::get_if<CharacteristicsConfig>(&cfg)) {
    reject(a.r || a.M || a.Q || a.e, "--r/--M/--Q/--e", name);
    Override(c->m, a.items);
    Override(c->c, a.c);
    Override(c->o, a.o);
    Override(c->p_pref, a.p_pref);
    Override(c->ell, a.ell);
    Override(c->h, a.h);
    Override(c->d, a.d);
  } else if (auto* nb = std::get_if<NeighborhoodConfig>(&cfg)) {
    reject(a.c || a.o || a.p_pref || a.ell || a.d || a.Q || a.e,
           "--c/--o/--p-pref/--ell/--d/--Q/--e", name);
    Override(nb->m, a.items);
    Override(nb->r, a.r);
    Override(nb->h, a.h);
    Override(nb->M, a.M);
  } else if (auto* pop = std::get_if<PopularityConfig>(&cfg)) {
    reject(a.c || a.o || a.p_pref || a.ell || a.h || a.r || a.M,
           "--c/--o/--p-pref/--ell/--h/--r/--M", name);
    Override(pop->m, a.items);
    Override(pop->e, a.e);
    Override(pop->Q, a.Q);
    Override(pop->d, a.d);
  }
  return cfg;
}

int CmdGenerate(const GlobalOptions& g, const GenerateArgs& a, std::ostream& out) {
  const Instance inst = generate(BuildConfig(a), g.seed);
  if (g.output.empty()) {
    out << serialize_instance(inst);
  } else {
    write_instance_file(g.output, inst);
    EFP_LOG(kInfo, "wrote " << g.output << " with " << inst.num_edges() << " edges");
  }
  return kExitOk;
}

// solve ----------------------------------------------------------------------

std::vector<FormulationKind> ParseKinds(const std::vector<std::string>& names) {
  std::vector<FormulationKind> kinds;
  for (const std::string& name : names) {
    if (name == "all" || name == "ALL") {
      kinds.insert(kinds.end(), kAllFormulations.begin(), kAllFormulations.end());
    } else {
      kinds.push_back(parse_formulation(name));
    }
  }
  if (kinds.empty()) throw UsageError("no formulation given");
  return kinds;
}

void PrintOutcome(const Instance& inst, const Outcome& outcome, std::ostream& out) {
  out << "  prices: " << JoinPrices(outcome.pricing) << '\n';
  for (int b = 0; b < inst.num_bidders(); ++b) {
    out << "  bidder " << b + 1 << " -> ";
    if (const auto item = outcome.allocation.item_of(b)) {
      out << "item " << *item + 1 << " (pays " << Fmt(outcome.pricing[*item])
          << ", utility " << Fmt(outcome.utilities[static_cast<std::size_t>(b)]) << ")\n";
    } else {
      out << "none\n";
    }
  }
}

void CheckOutcome(const Instance& inst, const Outcome& outcome, double tolerance) {
  const EnvyCheck envy = is_envy_free(inst, outcome.pricing, outcome.allocation, tolerance);
  if (!envy) throw InvariantViolation("solver returned an allocation that is not envy-free");
  const double recomputed = profit(inst, outcome.pricing);
  if (std::abs(recomputed - outcome.profit) > tolerance * std::max(1.0, recomputed)) {
    throw InvariantViolation("incumbent profit " + Fmt(outcome.profit) +
                             " differs from sol(p) = " + Fmt(recomputed));
  }
}

int CmdSolve(const GlobalOptions& g, const std::string& path,
             const std::vector<std::string>& formulations, std::ostream& out) {
  const Instance inst = read_instance_file(path);
  const std::vector<FormulationKind> kinds = ParseKinds(formulations);
  std::vector<BenchmarkRow> rows;
  std::optional<double> first_optimum;
  bool disagreement = false;
  for (FormulationKind kind : kinds) {
    const Formulation f(inst, kind, g.build());
    const MipResult result = solve_mip(inst, f, g.limits());
    CheckOutcome(inst, result.incumbent, g.tolerance);
    out << "formulation " << to_string(kind) << ": " << to_string(result.status)
        << ", profit " << Fmt(result.incumbent_value) << ", bound "
        << Fmt(result.best_bound) << ", gap " << Fmt(result.gap) << ", nodes "
        << result.nodes << '\n';
    PrintOutcome(inst, result.incumbent, out);
    if (result.status == MipStatus::kOptimal) {
      if (!first_optimum) {
        first_optimum = result.incumbent_value;
      } else if (std::abs(*first_optimum - result.incumbent_value) >
                 g.tolerance * std::max(1.0, std::abs(*first_optimum))) {
        disagreement = true;
      }
    }
    const std::string id = std::filesystem::path(path).stem().string();
    rows.push_back(make_benchmark_row(id, "file", inst.num_items(), kind, result));
  }
  CsvSink sink(g.output, out, benchmark_csv_header());
  for (const BenchmarkRow& row : rows) sink.write(to_csv(row));
  if (disagreement) throw InvariantViolation("formulations disagree on the optimum");
  return kExitOk;
}

// relax ----------------------------------------------------------------------

std::string RelaxationCsvHeader() {
  return "instance,lr_stm,lr_i,lr_l,lr_p,lr_u,violations";
}

std::string RelaxationCsv(const std::string& id, const RelaxationReport& report) {
  std::string line = id;
  for (FormulationKind kind : kAllFormulations) {
    const auto v = report[kind];
    line += ',' + (v ? Fmt(*v) : std::string("error"));
  }
  line += ',' + std::to_string(report.violations.size());
  return line;
}

RelaxationReport Relax(const GlobalOptions& g, const Instance& inst,
                       const std::string& id, std::ostream& err) {
  RelaxationOptions options;
  options.build = g.build();
  options.tolerance = g.tolerance;
  RelaxationReport report = compare_relaxations(inst, options);
  for (const std::string& v : report.violations) err << id << ": " << v << '\n';
  const auto lr_i = report[FormulationKind::kI];
  const auto lr_l = report[FormulationKind::kL];
  if (lr_i && lr_l && *lr_i < *lr_l - g.tolerance) {
    EFP_LOG(kInfo, id << ": LR_I = " << *lr_i << " < LR_L = " << *lr_l);
  }
  return report;
}

struct SearchArgs {
  bool find_strict = false;
  int budget = 500;
  int n = 5;
};

int CmdRelax(const GlobalOptions& g, const std::vector<std::string>& paths,
             const SearchArgs& search, std::ostream& out, std::ostream& err) {
  if (paths.empty() && !search.find_strict) {
    throw UsageError("relax needs instance files or --find-strict");
  }
  CsvSink sink(g.output, out, RelaxationCsvHeader());
  bool violated = false;
  for (const std::string& path : paths) {
    const Instance inst = read_instance_file(path);
    const RelaxationReport report = Relax(g, inst, path, err);
    violated |= !report.violations.empty();
    sink.write(RelaxationCsv(path, report));
  }

  if (search.find_strict) {
    constexpr MarketModel kModels[] = {MarketModel::kCharacteristics,
                                       MarketModel::kNeighborhood,
                                       MarketModel::kPopularity};
    std::optional<std::string> strict_i, strict_chain_id;
    for (int k = 0; k < search.budget && !(strict_i && strict_chain_id); ++k) {
      const MarketModel model = kModels[k % 3];
      const Seed seed = g.seed + static_cast<Seed>(k / 3);
      const std::string id = benchmark_instance_id(model, search.n, seed);
      const Instance inst = generate(preset(model, search.n), seed);
      const RelaxationReport report = Relax(g, inst, id, err);
      violated |= !report.violations.empty();
      sink.write(RelaxationCsv(id, report));
      if (!strict_i && strictly_tighter_than_stm(report, g.tolerance)) strict_i = id;
      if (!strict_chain_id && strict_chain(report, g.tolerance)) strict_chain_id = id;
    }
    err << "LR_I < LR_STM: " << strict_i.value_or("not found") << '\n';
    err << "LR_L < LR_P < LR_U: " << strict_chain_id.value_or("not found") << '\n';
  }
  if (violated) throw InvariantViolation("relaxation ordering violated");
  return kExitOk;
}

// round ----------------------------------------------------------------------

int CmdRound(const GlobalOptions& g, const std::string& path,
             const std::optional<std::vector<double>>& prices, double eps,
             std::ostream& out) {
  const Instance inst = read_instance_file(path);
  Pricing p = Pricing::Zero(inst.num_items());
  if (prices) {
    if (static_cast<int>(prices->size()) != inst.num_items()) {
      throw UsageError("--prices has " + std::to_string(prices->size()) +
                       " entries, instance has " + std::to_string(inst.num_items()) +
                       " items");
    }
    p = Pricing(*prices);
  } else {
    const Formulation f(inst, FormulationKind::kU, g.build());
    p = solve_mip(inst, f, g.limits()).incumbent.pricing;
  }
  Pricing rounded = p;
  double factor = 0.0;
  if (eps == 1.0) {
    rounded = round_pricing_half(inst, p);
    factor = kHalfRoundingFactor;
  } else {
    rounded = round_pricing_eps(inst, p, eps);
    factor = guarantee_factor(eps);
  }
  const double before = profit(inst, p);
  const double after = profit(inst, rounded);
  // Nothing to lose when sol(p) = 0.
  const double ratio = before > 0.0 ? after / before : 1.0;
  out << "p: " << JoinPrices(p) << '\n'
      << "rounded: " << JoinPrices(rounded) << '\n'
      << "sol(p): " << Fmt(before) << '\n'
      << "sol(rounded): " << Fmt(after) << '\n'
      << "ratio: " << Fmt(ratio) << '\n'
      << "guarantee: " << Fmt(factor) << '\n';
  if (ratio < factor - g.tolerance) {
    throw InvariantViolation("rounding ratio " + Fmt(ratio) + " is below the guarantee " +
                             Fmt(factor));
  }
  return kExitOk;
}

// oracle ---------------------------------------------------------------------

int CmdOracle(const GlobalOptions& g, const std::string& path, bool compare,
              std::ostream& out) {
  const Instance inst = read_instance_file(path);
  const Outcome best = brute_force_optimal(inst);
  out << "oracle profit: " << Fmt(best.profit) << '\n';
  PrintOutcome(inst, best, out);
  if (compare) {
    const Formulation f(inst, FormulationKind::kU, g.build());
    const MipResult mip = solve_mip(inst, f, g.limits());
    out << "mip " << to_string(mip.status) << ": " << Fmt(mip.incumbent_value) << '\n';
    if (mip.incumbent_value < best.profit - g.tolerance) {
      throw InvariantViolation("MIP value is below the candidate-price oracle");
    }
    if (mip.status == MipStatus::kOptimal) {
      const bool equal = mip.incumbent_value <= best.profit + g.tolerance;
      out << "oracle matches optimum: " << (equal ? "yes" : "no") << '\n';
    }
  }
  return kExitOk;
}

// benchmark ------------------------------------------------------------------

struct BenchmarkArgs {
  std::string model = "popularity";
  std::vector<int> sizes;
  int seeds = 1;
  std::vector<std::string> formulations{"all"};
  int threads = 1;
  std::string aggregates;
};

int CmdBenchmark(const GlobalOptions& g, const BenchmarkArgs& a, std::ostream& out) {
  BenchmarkConfig config;
  config.model = parse_market_model(a.model);
  config.sizes = a.sizes;
  for (int size : config.sizes) {
    if (size < 2) throw UsageError("sizes must be at least 2");
  }
  if (a.seeds < 1) throw UsageError("--seeds must be positive");
  config.seeds = a.seeds;
  config.first_seed = g.seed;
  config.formulations = ParseKinds(a.formulations);
  config.limits = g.limits();
  config.build = g.build();
  config.threads = a.threads;

  std::vector<BenchmarkRow> rows;
  {
    CsvSink sink(g.output, out, benchmark_csv_header());
    rows = run_benchmark(config, [&](const BenchmarkRow& row) { sink.write(to_csv(row)); });
  }
  std::ofstream agg_file;
  std::ostream* agg = &out;
  if (!a.aggregates.empty()) {
    agg_file.open(a.aggregates, std::ios::trunc);
    if (!agg_file) throw UsageError("cannot write " + a.aggregates);
    agg = &agg_file;
  } else if (g.output.empty()) {
    out << '\n';
  }
  *agg << aggregate_csv_header() << '\n';
  for (const AggregateRow& row : aggregate(rows)) *agg << to_csv(row) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Envy-free pricing: generators, formulations, solver and rounding", "efp"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--output", g.output, "Output file");
  app.add_option("--time-limit", g.time_limit, "Branch-and-bound time limit in seconds")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--tolerance", g.tolerance, "Comparison tolerance")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--no-price-bound", g.no_price_bound, "Drop the p_i <= R_i bounds");

  GenerateArgs gen;
  CLI::App* generate_cmd = app.add_subcommand("generate", "Generate a preset instance");
  // -h would clash with the --h override.
  generate_cmd->set_help_flag("--help", "Print this help message and exit");
  generate_cmd->add_option("--model", gen.model, "characteristics, neighborhood or popularity")
      ->required();
  generate_cmd->add_option("--n", gen.n, "Market size (items = bidders = n)")->required();
  generate_cmd->add_option("--items", gen.items, "Override the number of items");
  generate_cmd->add_option("--c", gen.c, "Characteristics per item");
  generate_cmd->add_option("--o", gen.o, "Options per characteristic");
  generate_cmd->add_option("--p-pref", gen.p_pref, "Accepted options per characteristic");
  generate_cmd->add_option("--ell", gen.ell, "Lowest market price");
  generate_cmd->add_option("--h", gen.h, "Highest market price or multiplier");
  generate_cmd->add_option("--d", gen.d, "Relative deviation of valuations");
  generate_cmd->add_option("--r", gen.r, "Neighborhood radius");
  generate_cmd->add_option("--M", gen.M, "Neighborhood scale");
  generate_cmd->add_option("--e", gen.e, "Number of edges");
  generate_cmd->add_option("--Q", gen.Q, "Largest quality");

  std::string instance_path;
  std::vector<std::string> formulations{"U"};
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve an instance to optimality");
  solve_cmd->add_option("instance", instance_path, "Instance file")->required();
  solve_cmd->add_option("--formulation", formulations, "STM, I, L, P, U or all")
      ->delimiter(',');

  std::vector<std::string> relax_paths;
  SearchArgs search;
  CLI::App* relax_cmd = app.add_subcommand("relax", "Compare the LP relaxations");
  relax_cmd->alias("compare-relaxations");
  relax_cmd->add_option("instances", relax_paths, "Instance files");
  relax_cmd->add_flag("--find-strict", search.find_strict,
                      "Search generated instances for strict gaps");
  relax_cmd->add_option("--budget", search.budget, "Instances to try when searching")
      ->check(CLI::PositiveNumber);
  relax_cmd->add_option("--n", search.n, "Size of searched instances")
      ->check(CLI::Range(2, 1000));

  std::optional<std::vector<double>> prices;
  double eps = 1.0;
  CLI::App* round_cmd = app.add_subcommand("round", "Round a pricing onto a geometric grid");
  round_cmd->add_option("instance", instance_path, "Instance file")->required();
  round_cmd->add_option("--prices", prices, "Comma-separated prices (default: solve first)")
      ->delimiter(',');
  round_cmd->add_option("--eps", eps, "Grid parameter, 1 or in (0, 1)")
      ->check(CLI::Range(0.0, 1.0));

  bool compare = false;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Brute-force candidate prices");
  oracle_cmd->add_option("instance", instance_path, "Instance file")->required();
  oracle_cmd->add_flag("--compare", compare, "Also solve the MIP and compare");

  BenchmarkArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("benchmark", "Solve generated instances in bulk");
  bench_cmd->add_option("--model", bench.model, "Market model");
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated sizes")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--seeds", bench.seeds, "Seeds per size, starting at --seed");
  bench_cmd->add_option("--formulations", bench.formulations, "Formulations or all")
      ->delimiter(',');
  bench_cmd->add_option("--threads", bench.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--aggregates", bench.aggregates, "Aggregate CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate_cmd) return CmdGenerate(g, gen, out);
    if (*solve_cmd) return CmdSolve(g, instance_path, formulations, out);
    if (*relax_cmd) return CmdRelax(g, relax_paths, search, out, err);
    if (*round_cmd) return CmdRound(g, instance_path, prices, eps, out);
    if (*oracle_cmd) return CmdOracle(g, instance_path, compare, out);
    if (*bench_cmd) return CmdBenchmark(g, bench, out);
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace efp
