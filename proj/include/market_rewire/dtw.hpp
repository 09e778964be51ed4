#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "market_rewire/core.hpp"
#include "market_rewire/preprocess.hpp"

namespace market_rewire {

/// Unnormalized DTW cost between two univariate sequences with |p - q| local cost and
/// the symmetric (left, down, diagonal) step pattern.
///
/// `band` optionally restricts the alignment to |i - j| <= band; it must be at least
/// the length difference. Throws std::invalid_argument on empty input or an
/// unsatisfiable band.
double dtw_distance(std::span<const double> p, std::span<const double> q,
                    std::optional<std::size_t> band = std::nullopt);

/// Pairwise DTW distances for one date. Symmetric with a zero diagonal.
struct DistanceMatrix {
  Date end_date;
  std::vector<std::string> asset_ids;
  SquareMatrix d;
};

struct DistanceOptions {
  std::optional<std::size_t> band;
  /// Worker threads; 0 picks the hardware concurrency. The result does not depend on it.
  unsigned threads = 1;
};

/// Fills d[i][j] = dtw_distance(windows[i], windows[j]) over all unordered pairs.
/// Throws PreprocessError when the windows disagree on end date or length.
DistanceMatrix distance_matrix(std::span<const StandardizedWindow> windows,
                               const DistanceOptions& options = {});

}  // namespace market_rewire
