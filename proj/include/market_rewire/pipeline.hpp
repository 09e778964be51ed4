#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "market_rewire/core.hpp"
#include "market_rewire/dtw.hpp"
#include "market_rewire/ingest.hpp"
#include "market_rewire/networks.hpp"
#include "market_rewire/preprocess.hpp"

namespace market_rewire {

enum class SnapshotMode { none, all, listed };

struct PipelineConfig {
  std::size_t window_w = 20;
  double cooc_threshold = 2.0;
  double diff_threshold = 1.0;
  std::size_t hub_min_degree = 3;
  FillPolicy fill_policy = FillPolicy::forward_fill;
  std::optional<std::size_t> band_halfwidth;
  SnapshotMode snapshots = SnapshotMode::none;
  /// Dates to snapshot when `snapshots == SnapshotMode::listed`.
  std::set<Date> snapshot_dates;
  /// Worker-thread cap for distance matrices; 0 = hardware concurrency.
  unsigned threads = 1;
  WarningSink warn;

  /// Throws std::invalid_argument when a parameter is out of range.
  void validate() const;
};

/// Metrics of one analyzable date. Differential fields are empty on the first
/// analyzable date because there is no previous distance matrix to difference.
struct MetricsRow {
  Date end_date;
  std::size_t date_index = 0;
  double gbe = 0.0;
  std::size_t n_components = 0;
  std::size_t n_cooc_edges = 0;
  std::optional<std::size_t> n_red_edges;
  std::optional<std::size_t> n_blue_edges;
  std::optional<std::size_t> n_farther_hubs;
  std::optional<std::size_t> n_closer_hubs;

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

struct Snapshot {
  Date end_date;
  Graph cooccurrence;
  std::optional<SignedGraph> differential;
  HubSummary hubs;
};

struct RunResult {
  std::vector<MetricsRow> metrics;
  /// Empty when snapshots were streamed to a sink.
  std::vector<Snapshot> snapshots;
};

/// Called once per requested snapshot, in date order, as soon as it is built.
using SnapshotSink = std::function<void(const Snapshot&)>;

/// Smallest panel length `run` accepts for a given window.
constexpr std::size_t min_dates_for(std::size_t window_w) noexcept { return window_w + 1; }

/// Slides the window over the panel from date index window_w - 1 to the end, emitting
/// one MetricsRow per date. Missing cells are resolved with config.fill_policy first.
///
/// Only the previous day's distance matrix is kept alive. If `sink` is set, snapshots
/// go to it instead of into RunResult::snapshots.
RunResult run(const PricePanel& panel, const PipelineConfig& config, const SnapshotSink& sink = {});

}  // namespace market_rewire
