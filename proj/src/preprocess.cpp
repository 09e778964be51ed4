#include "market_rewire/preprocess.hpp"

#include <algorithm>
#include <cmath>

namespace market_rewire {

bool is_constant_window(std::span<const double> window) noexcept {
  return std::all_of(window.begin(), window.end(), [&](double v) { return v == window.front(); });
}

std::vector<double> window_zscore(std::span<const double> raw_window) {
  const std::size_t n = raw_window.size();
  if (n < 2) throw PreprocessError("z-score window needs at least 2 values, got " + std::to_string(n));

  std::vector<double> out(n, 0.0);
  if (is_constant_window(raw_window)) return out;

  double mean = 0;
  for (double v : raw_window) mean += v;
  mean /= static_cast<double>(n);

  double ss = 0;
  for (double v : raw_window) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  for (std::size_t i = 0; i < n; ++i) out[i] = (raw_window[i] - mean) / sd;
  return out;
}

std::vector<double> apply_direction(std::span<const double> window, int direction) {
  if (direction != 1 && direction != -1) {
    throw PreprocessError("direction must be +1 or -1, got " + std::to_string(direction));
  }
  std::vector<double> out(window.begin(), window.end());
  if (direction == -1) {
    for (double& v : out) v = -v;
  }
  return out;
}

std::vector<StandardizedWindow> windows_at(const PricePanel& panel, std::size_t end_index,
                                           std::size_t window, const WarningSink& warn) {
  if (window < 2) throw PreprocessError("window width must be at least 2");
  if (end_index + 1 < window) {
    throw PreprocessError("insufficient history: date index " + std::to_string(end_index) +
                          " needs " + std::to_string(window) + " observations");
  }
  if (end_index >= panel.n_dates()) {
    throw PreprocessError("date index " + std::to_string(end_index) + " outside panel of " +
                          std::to_string(panel.n_dates()) + " dates");
  }

  const std::size_t first = end_index + 1 - window;
  const Date end_date = panel.dates()[end_index];
  std::vector<StandardizedWindow> out;
  out.reserve(panel.n_assets());
  for (std::size_t a = 0; a < panel.n_assets(); ++a) {
    const auto& meta = panel.assets()[a];
    auto raw = panel.column(a, first, window);
    if (!std::all_of(raw.begin(), raw.end(), [](double v) { return std::isfinite(v); })) {
      throw PreprocessError("asset '" + meta.asset_id + "' has missing values in the window ending " +
                            format_date(end_date));
    }
    if (warn && is_constant_window(raw)) {
      warn("flat price window for '" + meta.asset_id + "' ending " + format_date(end_date) +
           "; treated as no signal");
    }
    out.push_back({meta.asset_id, end_date, apply_direction(window_zscore(raw), meta.direction)});
  }
  return out;
}

}  // namespace market_rewire
