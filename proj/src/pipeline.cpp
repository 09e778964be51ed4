#include "market_rewire/pipeline.hpp"

#include <algorithm>

namespace market_rewire {

void PipelineConfig::validate() const {
  if (window_w < 2) throw std::invalid_argument("window width must be >= 2");
  if (!(cooc_threshold > 0)) throw std::invalid_argument("co-occurrence threshold must be > 0");
  if (!(diff_threshold > 0)) throw std::invalid_argument("differential threshold must be > 0");
  if (hub_min_degree < 1) throw std::invalid_argument("hub degree must be >= 1");
}

RunResult run(const PricePanel& input, const PipelineConfig& config, const SnapshotSink& sink) {
  config.validate();

  const PricePanel panel = input.is_complete() ? input : fill_missing(input, config.fill_policy);
  const std::size_t w = config.window_w;
  if (panel.n_dates() < min_dates_for(w)) {
    throw PipelineError("panel has " + std::to_string(panel.n_dates()) + " dates; window " +
                        std::to_string(w) + " needs at least " + std::to_string(min_dates_for(w)));
  }
  if (panel.n_assets() < 2) throw PipelineError("panel needs at least 2 assets");

  if (config.snapshots == SnapshotMode::listed) {
    const auto first = panel.dates().begin() + static_cast<std::ptrdiff_t>(w - 1);
    for (const auto& d : config.snapshot_dates) {
      if (!std::binary_search(first, panel.dates().end(), d)) {
        throw PipelineError("snapshot date " + format_date(d) + " is not an analyzable date");
      }
    }
  }

  const DistanceOptions dopts{config.band_halfwidth, config.threads};
  RunResult result;
  result.metrics.reserve(panel.n_dates() - w + 1);

  std::optional<DistanceMatrix> prev;
  for (std::size_t t = w - 1; t < panel.n_dates(); ++t) {
    const Date date = panel.dates()[t];
    auto windows = windows_at(panel, t, w, config.warn);
    DistanceMatrix dm = distance_matrix(windows, dopts);

    Graph cooc = cooccurrence_network(dm, config.cooc_threshold);
    auto components = connected_components(cooc);

    MetricsRow row;
    row.end_date = date;
    row.date_index = t;
    row.gbe = graph_based_entropy(components);
    row.n_components = components.size();
    row.n_cooc_edges = cooc.edges.size();

    std::optional<SignedGraph> diff_net;
    HubSummary hubs;
    if (prev) {
      diff_net = differential_network(difference_matrix(dm, *prev), config.diff_threshold,
                                       dm.asset_ids, date);
      hubs = count_hubs(*diff_net, config.hub_min_degree);
      row.n_red_edges = diff_net->red_edges.size();
      row.n_blue_edges = diff_net->blue_edges.size();
      row.n_farther_hubs = hubs.n_farther();
      row.n_closer_hubs = hubs.n_closer();
    }
    result.metrics.push_back(row);

    const bool wanted = config.snapshots == SnapshotMode::all ||
                        (config.snapshots == SnapshotMode::listed && config.snapshot_dates.contains(date));
    if (wanted) {
      Snapshot snap{date, std::move(cooc), std::move(diff_net), std::move(hubs)};
      if (sink) {
        sink(snap);
      } else {
        result.snapshots.push_back(std::move(snap));
      }
    }
    prev = std::move(dm);
  }
  return result;
}

}  // namespace market_rewire
