#include "market_rewire/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace market_rewire {

double dtw_distance(std::span<const double> p, std::span<const double> q,
                    std::optional<std::size_t> band) {
  if (p.empty() || q.empty()) throw std::invalid_argument("dtw_distance: empty sequence");
  const std::size_t l = p.size();
  const std::size_t m = q.size();
  const std::size_t gap = l > m ? l - m : m - l;
  if (band && *band < gap) {
    throw std::invalid_argument("dtw_distance: band " + std::to_string(*band) +
                                " is narrower than the length difference " + std::to_string(gap));
  }
  const std::size_t radius = band.value_or(std::max(l, m));

  constexpr double inf = std::numeric_limits<double>::infinity();
  // Rolling rows of the cumulative cost table; column 0 is the +inf border.
  std::vector<double> prev(m + 1, inf);
  std::vector<double> curr(m + 1, inf);
  prev[0] = 0.0;

  for (std::size_t i = 1; i <= l; ++i) {
    std::fill(curr.begin(), curr.end(), inf);
    const std::size_t j_lo = i > radius ? std::max<std::size_t>(1, i - radius) : 1;
    const std::size_t j_hi = std::min(m, i + radius);
    const double pi = p[i - 1];
    for (std::size_t j = j_lo; j <= j_hi; ++j) {
      const double best = std::min({curr[j - 1], prev[j], prev[j - 1]});
      curr[j] = std::abs(pi - q[j - 1]) + best;
    }
    std::swap(prev, curr);
    prev[0] = inf;
  }
  return prev[m];
}

DistanceMatrix distance_matrix(std::span<const StandardizedWindow> windows,
                               const DistanceOptions& options) {
  DistanceMatrix out;
  const std::size_t n = windows.size();
  out.d = SquareMatrix(n);
  if (n == 0) return out;

  out.end_date = windows.front().end_date;
  const std::size_t w = windows.front().values.size();
  out.asset_ids.reserve(n);
  for (const auto& win : windows) {
    if (win.end_date != out.end_date) {
      throw PreprocessError("window for '" + win.asset_id + "' ends " + format_date(win.end_date) +
                            ", expected " + format_date(out.end_date));
    }
    if (win.values.size() != w) {
      throw PreprocessError("window for '" + win.asset_id + "' has length " +
                            std::to_string(win.values.size()) + ", expected " + std::to_string(w));
    }
    out.asset_ids.push_back(win.asset_id);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }

  // Each entry depends only on its own pair, so any split of the pair list yields
  // the same matrix.
  auto fill_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      auto [i, j] = pairs[k];
      double dist = dtw_distance(windows[i].values, windows[j].values, options.band);
      out.d(i, j) = dist;
      out.d(j, i) = dist;
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(resolve_threads(options.threads), std::max<std::size_t>(pairs.size(), 1));
  if (workers <= 1) {
    fill_range(0, pairs.size());
    return out;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (pairs.size() + workers - 1) / workers;
    for (std::size_t t = 0; t < workers; ++t) {
      std::size_t begin = t * chunk;
      std::size_t end = std::min(pairs.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(fill_range, begin, end);
    }
  }
  return out;
}

}  // namespace market_rewire
