#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "market_rewire/core.hpp"
#include "market_rewire/ingest.hpp"

namespace market_rewire {

/// A co-movement episode over days [start_day, end_day], both inclusive.
struct ShockSpec {
  std::size_t start_day = 0;
  std::size_t end_day = 0;
  /// Affected asset indices; empty means every asset.
  std::vector<std::size_t> affected_assets;
  double factor_loading = 1.0;
};

/// Relative weights used to assign asset classes in contiguous blocks.
struct ClassRatio {
  unsigned stock = 2;
  unsigned bond = 1;
  unsigned fx = 1;
};

struct SynthSpec {
  std::size_t n_assets = 20;
  std::size_t n_days = 260;
  std::uint64_t seed = 42;
  std::vector<ShockSpec> shocks;
  ClassRatio classes;
  /// Daily log-return volatility of both the idiosyncratic and the common draws.
  double daily_vol = 0.01;
  double initial_price = 100.0;
  /// First calendar date; later dates advance over weekdays only.
  Date start_date{std::chrono::year{2007}, std::chrono::January, std::chrono::day{1}};

  /// Throws std::invalid_argument when the spec is unusable.
  void validate() const;
};

/// Class and risk-on direction of asset `index` under the block assignment.
/// Stocks get +1, bonds and FX get -1.
AssetMeta synth_asset_meta(const SynthSpec& spec, std::size_t index);

/// Simulates log-price random walks with optional common-factor shocks.
///
/// Outside shocks each asset's daily log-return is vol * e_i. Inside a shock an
/// affected asset's return is vol * (L * direction_i * f + (1 - L) * e_i), where f is
/// a common standard normal draw shared by all assets that day and L is the loading.
/// Draws come from std::mt19937_64 through a Box-Muller transform, so the panel is a
/// pure function of the spec.
PricePanel generate(const SynthSpec& spec);

}  // namespace market_rewire
