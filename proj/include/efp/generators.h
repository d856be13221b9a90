// SPDX-License-Identifier: Apache-2.0
//
// Random unit-demand markets.
//
// Three models, each deterministic in (config, seed):
//
//  * Characteristics: items carry a profile of c characteristics with o
//    options each; a bidder accepts p_pref options per characteristic and
//    values exactly the items whose whole profile it accepts.
//  * Neighborhood: items and bidders are points in the unit square; a bidder
//    values the items within distance r, more so when they are closer.
//  * Popularity: edges are added by preferential attachment on the item side;
//    an item's market price is its quality divided by its final degree.
//
// Valuations around a market price pbar are drawn from 1 + N(pbar, (pbar d)^2)
// and redrawn until strictly positive.

#ifndef EFP_GENERATORS_H_
#define EFP_GENERATORS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "efp/core.h"
#include "efp/rng.h"

namespace efp {

class InvalidConfigError : public Error {
 public:
  using Error::Error;
};

class EdgeBudgetInfeasibleError : public InvalidConfigError {
 public:
  using InvalidConfigError::InvalidConfigError;
};

using Seed = std::uint64_t;

struct CharacteristicsConfig {
  int m = 1;
  int n = 1;
  int c = 1;       // characteristics per item
  int o = 1;       // options per characteristic
  int p_pref = 1;  // options a bidder accepts per characteristic
  double ell = 1.0;  // market price range [ell, h]
  double h = 1.0;
  double d = 0.1;  // relative standard deviation of valuations

  void validate() const;
};

struct NeighborhoodConfig {
  int m = 1;
  int n = 1;
  double r = 0.1;  // edge radius
  double h = 1.0;  // bidder multipliers are drawn from [1, h]
  double M = 1.0;  // scaling factor

  void validate() const;
};

struct PopularityConfig {
  int m = 1;
  int n = 1;
  long long e = 0;  // number of distinct edges
  double Q = 1.0;   // qualities are drawn from (0, Q]
  double d = 0.1;

  void validate() const;
};

enum class MarketModel { kCharacteristics, kNeighborhood, kPopularity };

using GeneratorConfig =
    std::variant<CharacteristicsConfig, NeighborhoodConfig, PopularityConfig>;

std::string_view to_string(MarketModel model);
// Accepts "characteristics", "neighborhood", "popularity". Throws
// InvalidConfigError otherwise.
MarketModel parse_market_model(std::string_view name);

Instance gen_characteristics(const CharacteristicsConfig& cfg, Seed seed);
Instance gen_neighborhood(const NeighborhoodConfig& cfg, Seed seed);
Instance gen_popularity(const PopularityConfig& cfg, Seed seed);
Instance generate(const GeneratorConfig& cfg, Seed seed);

// Experiment presets with m = n = size:
//   characteristics: o = 8, p_pref = 7, c = ceil(log(8/n) / log(7/8)),
//                    [ell, h] = [1, 100], d = 0.25
//   neighborhood:    h = 3, r = sqrt(8 / (n pi)), M = 10
//   popularity:      e = 8n, Q = 200, d = 0.25
// For sizes below 8 the characteristics count is clamped to 1 and the edge
// budget to m n, so every size >= 2 yields a valid config.
GeneratorConfig preset(MarketModel model, int size);

// Number of characteristics used by the characteristics preset.
int preset_characteristics_count(int size);

// Bipartite graph grown by preferential attachment: an item of degree d_i is
// drawn with weight d_i + 1, the bidder uniformly. Pairs that already exist are
// redrawn entirely.
class AttachmentGraph {
 public:
  AttachmentGraph(int num_items, int num_bidders);

  // Returns false if the edge already existed.
  bool add_edge(int item, int bidder);
  // Draws pairs until a new edge is added; returns it as (item, bidder).
  std::pair<int, int> add_random_edge(Rng& rng);

  bool has_edge(int item, int bidder) const;
  int degree(int item) const { return degree_[static_cast<std::size_t>(item)]; }
  long long num_edges() const { return num_edges_; }
  // Attachment weight d_i + 1.
  double item_weight(int item) const { return degree(item) + 1.0; }

  // Edges in insertion order.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  int num_items_;
  int num_bidders_;
  long long num_edges_ = 0;
  std::vector<int> degree_;
  std::vector<bool> present_;
  std::vector<std::pair<int, int>> edges_;
};

// Market price of an item in the popularity model: quality / degree.
double popularity_market_price(double quality, int degree);

}  // namespace efp

#endif  // EFP_GENERATORS_H_
