#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "market_rewire/core.hpp"
#include "market_rewire/ingest.hpp"

namespace market_rewire {

/// Receives human-readable warnings (e.g. flat price windows).
using WarningSink = std::function<void(const std::string&)>;

/// A trailing window of one asset, z-scored within itself and multiplied by the
/// asset's direction sign.
struct StandardizedWindow {
  std::string asset_id;
  Date end_date;
  std::vector<double> values;
};

/// True when every element equals the first one.
bool is_constant_window(std::span<const double> window) noexcept;

/// Standardizes a window by its own mean and sample (n - 1) standard deviation.
/// A constant window maps to all zeros. Throws PreprocessError if fewer than 2 values.
std::vector<double> window_zscore(std::span<const double> raw_window);

std::vector<double> apply_direction(std::span<const double> window, int direction);

/// Builds the standardized, direction-corrected window of every asset for the
/// `window` observations ending at date index `end_index` (inclusive).
///
/// Throws PreprocessError("insufficient history") when end_index < window - 1, and
/// when the panel still has missing cells inside the window. Flat windows are
/// reported through `warn` and produce all-zero values.
std::vector<StandardizedWindow> windows_at(const PricePanel& panel, std::size_t end_index,
                                           std::size_t window, const WarningSink& warn = {});

}  // namespace market_rewire
