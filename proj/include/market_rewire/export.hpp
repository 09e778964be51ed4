#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "market_rewire/ingest.hpp"
#include "market_rewire/networks.hpp"
#include "market_rewire/pipeline.hpp"

namespace market_rewire {

enum class GraphFormat { dot, json };

std::string_view extension(GraphFormat format) noexcept;

/// Node fill colour per asset class, following the usual multi-asset legend:
/// stocks red, bonds orange, FX green-yellow, anything else black.
std::string_view class_color(AssetClass cls) noexcept;

/// Serializes a graph with nodes and edges sorted by asset id, so equal graphs give
/// equal bytes. `assets` supplies the class of each node and must cover every node.
std::string export_graph(const Graph& g, std::span<const AssetMeta> assets, GraphFormat format);
std::string export_graph(const SignedGraph& g, std::span<const AssetMeta> assets, GraphFormat format);

inline constexpr std::string_view kMetricsHeader =
    "date,gbe,n_components,n_cooc_edges,n_red_edges,n_blue_edges,n_farther_hubs,n_closer_hubs";

/// Metrics CSV. Doubles use the shortest round-trip form; absent fields are empty.
void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows);
std::string metrics_csv(std::span<const MetricsRow> rows);

/// Static line charts of the metrics series.
std::string render_gbe_svg(std::span<const MetricsRow> rows);
std::string render_hubs_svg(std::span<const MetricsRow> rows);

}  // namespace market_rewire
