// SPDX-License-Identifier: Apache-2.0
//
// Draw order (part of the reproducibility contract for a given build):
//  characteristics: item profiles (item-major), bidder preference rows
//    (bidder-major, row-major), market prices per item, then valuations per
//    edge in (item, bidder) order.
//  neighborhood: item points, bidder points, bidder multipliers. A bidder point
//    that coincides with an item point is redrawn right away.
//  popularity: attachment edges, qualities per item, then valuations per edge
//    in (item, bidder) order.

#include "efp/generators.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace efp {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw InvalidConfigError(what);
}

void RequireMarket(int m, int n) {
  Require(m >= 1, "m must be at least 1");
  Require(n >= 1, "n must be at least 1");
}

double DrawValuation(Rng& rng, double market_price, double deviation) {
  const double sigma = std::abs(market_price * deviation);
  double v;
  do {
    v = quantize_valuation(1.0 + rng.normal(market_price, sigma));
  } while (!(v > 0.0));
  return v;
}

}  // namespace

void CharacteristicsConfig::validate() const {
  RequireMarket(m, n);
  Require(c >= 1, "c must be at least 1");
  Require(o >= 1, "o must be at least 1");
  Require(p_pref >= 1 && p_pref <= o, "p_pref must lie in [1, o]");
  Require(std::isfinite(ell) && std::isfinite(h), "ell and h must be finite");
  Require(ell >= 0.0, "ell must be non-negative");
  Require(ell <= h, "ell must not exceed h");
  Require(d > 0.0 && std::isfinite(d), "d must be positive");
}

void NeighborhoodConfig::validate() const {
  RequireMarket(m, n);
  Require(r >= 0.0 && std::isfinite(r), "r must be finite and non-negative");
  Require(h >= 1.0 && std::isfinite(h), "h must be at least 1");
  Require(M > 0.0 && std::isfinite(M), "M must be positive");
}

void PopularityConfig::validate() const {
  RequireMarket(m, n);
  Require(e >= 0, "e must be non-negative");
  Require(Q > 0.0 && std::isfinite(Q), "Q must be positive");
  Require(d > 0.0 && std::isfinite(d), "d must be positive");
  if (e > static_cast<long long>(m) * n) {
    throw EdgeBudgetInfeasibleError("e = " + std::to_string(e) +
                                    " exceeds m * n = " +
                                    std::to_string(static_cast<long long>(m) * n));
  }
}

std::string_view to_string(MarketModel model) {
  switch (model) {
    case MarketModel::kCharacteristics:
      return "characteristics";
    case MarketModel::kNeighborhood:
      return "neighborhood";
    case MarketModel::kPopularity:
      return "popularity";
  }
  return "unknown";
}

MarketModel parse_market_model(std::string_view name) {
  if (name == "characteristics") return MarketModel::kCharacteristics;
  if (name == "neighborhood") return MarketModel::kNeighborhood;
  if (name == "popularity") return MarketModel::kPopularity;
  throw InvalidConfigError("unknown market model '" + std::string(name) + "'");
}

Instance gen_characteristics(const CharacteristicsConfig& cfg, Seed seed) {
  cfg.validate();
  Rng rng(seed);
  const auto m = static_cast<std::size_t>(cfg.m);
  const auto n = static_cast<std::size_t>(cfg.n);
  const auto c = static_cast<std::size_t>(cfg.c);
  const auto o = static_cast<std::size_t>(cfg.o);

  std::vector<std::size_t> profile(m * c);
  for (auto& value : profile) value = rng.below(o);

  // accepts[(b * c + k) * o + option]
  std::vector<char> accepts(n * c * o, 0);
  std::vector<std::size_t> options(o);
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t k = 0; k < c; ++k) {
      std::iota(options.begin(), options.end(), std::size_t{0});
      // Partial Fisher-Yates: the first p_pref entries are a uniform subset.
      for (std::size_t j = 0; j < static_cast<std::size_t>(cfg.p_pref); ++j) {
        const std::size_t pick = j + rng.below(o - j);
        std::swap(options[j], options[pick]);
        accepts[(b * c + k) * o + options[j]] = 1;
      }
    }
  }

  std::vector<double> market_price(m);
  for (auto& price : market_price) price = rng.uniform(cfg.ell, cfg.h);

  std::vector<Valuation> edges;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t b = 0; b < n; ++b) {
      bool match = true;
      for (std::size_t k = 0; k < c && match; ++k) {
        match = accepts[(b * c + k) * o + profile[i * c + k]] != 0;
      }
      if (match) {
        edges.push_back({static_cast<int>(i), static_cast<int>(b),
                         DrawValuation(rng, market_price[i], cfg.d)});
      }
    }
  }
  return Instance::FromEdges(cfg.m, cfg.n, edges);
}

Instance gen_neighborhood(const NeighborhoodConfig& cfg, Seed seed) {
  cfg.validate();
  Rng rng(seed);
  struct Point {
    double x, y;
  };
  constexpr double kCoincident = 1e-12;

  std::vector<Point> items(static_cast<std::size_t>(cfg.m));
  for (auto& pt : items) pt = {rng.uniform(), rng.uniform()};

  auto too_close = [&](const Point& q) {
    return std::any_of(items.begin(), items.end(), [&](const Point& it) {
      return std::hypot(it.x - q.x, it.y - q.y) < kCoincident;
    });
  };
  std::vector<Point> bidders(static_cast<std::size_t>(cfg.n));
  for (auto& pt : bidders) {
    do {
      pt = {rng.uniform(), rng.uniform()};
    } while (too_close(pt));
  }
  std::vector<double> multiplier(bidders.size());
  for (auto& k : multiplier) k = rng.uniform(1.0, cfg.h);

  std::vector<Valuation> edges;
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t b = 0; b < bidders.size(); ++b) {
      const double dist =
          std::hypot(items[i].x - bidders[b].x, items[i].y - bidders[b].y);
      if (dist <= cfg.r) {
        edges.push_back({static_cast<int>(i), static_cast<int>(b),
                         quantize_valuation(1.0 + cfg.M * multiplier[b] / dist)});
      }
    }
  }
  return Instance::FromEdges(cfg.m, cfg.n, edges);
}

AttachmentGraph::AttachmentGraph(int num_items, int num_bidders)
    : num_items_(num_items),
      num_bidders_(num_bidders),
      degree_(static_cast<std::size_t>(num_items), 0),
      present_(static_cast<std::size_t>(num_items) *
                   static_cast<std::size_t>(num_bidders),
               false) {}

bool AttachmentGraph::has_edge(int item, int bidder) const {
  return present_[static_cast<std::size_t>(item) *
                      static_cast<std::size_t>(num_bidders_) +
                  static_cast<std::size_t>(bidder)];
}

bool AttachmentGraph::add_edge(int item, int bidder) {
  if (item < 0 || item >= num_items_ || bidder < 0 || bidder >= num_bidders_) {
    throw IndexOutOfRangeError("attachment edge outside the market");
  }
  if (has_edge(item, bidder)) return false;
  present_[static_cast<std::size_t>(item) *
               static_cast<std::size_t>(num_bidders_) +
           static_cast<std::size_t>(bidder)] = true;
  ++degree_[static_cast<std::size_t>(item)];
  ++num_edges_;
  edges_.emplace_back(item, bidder);
  return true;
}

std::pair<int, int> AttachmentGraph::add_random_edge(Rng& rng) {
  if (num_edges_ >= static_cast<long long>(num_items_) * num_bidders_) {
    throw EdgeBudgetInfeasibleError("attachment graph is already complete");
  }
  while (true) {
    const int bidder = static_cast<int>(
        rng.below(static_cast<std::uint64_t>(num_bidders_)));
    // Total weight is sum(d_i + 1) = m + |E|.
    double target = rng.uniform() * static_cast<double>(num_items_ + num_edges_);
    int item = num_items_ - 1;
    for (int i = 0; i < num_items_; ++i) {
      target -= item_weight(i);
      if (target < 0.0) {
        item = i;
        break;
      }
    }
    if (add_edge(item, bidder)) return {item, bidder};
  }
}

double popularity_market_price(double quality, int degree) {
  if (degree <= 0) throw InvalidConfigError("market price needs a positive degree");
  return quality / degree;
}

Instance gen_popularity(const PopularityConfig& cfg, Seed seed) {
  cfg.validate();
  Rng rng(seed);
  AttachmentGraph graph(cfg.m, cfg.n);
  while (graph.num_edges() < cfg.e) graph.add_random_edge(rng);

  std::vector<double> quality(static_cast<std::size_t>(cfg.m));
  for (auto& q : quality) q = rng.uniform_positive(cfg.Q);

  std::vector<Valuation> edges;
  edges.reserve(static_cast<std::size_t>(cfg.e));
  for (int i = 0; i < cfg.m; ++i) {
    if (graph.degree(i) == 0) continue;
    const double price =
        popularity_market_price(quality[static_cast<std::size_t>(i)],
                                graph.degree(i));
    for (int b = 0; b < cfg.n; ++b) {
      if (graph.has_edge(i, b)) {
        edges.push_back({i, b, DrawValuation(rng, price, cfg.d)});
      }
    }
  }
  return Instance::FromEdges(cfg.m, cfg.n, edges);
}

Instance generate(const GeneratorConfig& cfg, Seed seed) {
  return std::visit(
      [seed](const auto& c) -> Instance {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, CharacteristicsConfig>) {
          return gen_characteristics(c, seed);
        } else if constexpr (std::is_same_v<T, NeighborhoodConfig>) {
          return gen_neighborhood(c, seed);
        } else {
          return gen_popularity(c, seed);
        }
      },
      cfg);
}

int preset_characteristics_count(int size) {
  const double c = std::ceil(std::log(8.0 / size) / std::log(7.0 / 8.0));
  return std::max(1, static_cast<int>(c));
}

GeneratorConfig preset(MarketModel model, int size) {
  Require(size >= 2, "preset size must be at least 2");
  switch (model) {
    case MarketModel::kCharacteristics: {
      CharacteristicsConfig cfg;
      cfg.m = cfg.n = size;
      cfg.o = 8;
      cfg.p_pref = 7;
      cfg.c = preset_characteristics_count(size);
      cfg.ell = 1.0;
      cfg.h = 100.0;
      cfg.d = 0.25;
      return cfg;
    }
    case MarketModel::kNeighborhood: {
      NeighborhoodConfig cfg;
      cfg.m = cfg.n = size;
      cfg.h = 3.0;
      cfg.r = std::sqrt(8.0 / (size * std::numbers::pi));
      cfg.M = 10.0;
      return cfg;
    }
    case MarketModel::kPopularity: {
      PopularityConfig cfg;
      cfg.m = cfg.n = size;
      cfg.e = std::min(8LL * size, static_cast<long long>(size) * size);
      cfg.Q = 200.0;
      cfg.d = 0.25;
      return cfg;
    }
  }
  throw InvalidConfigError("unknown market model");
}

}  // namespace efp
