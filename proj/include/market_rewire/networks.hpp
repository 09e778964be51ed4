#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "market_rewire/core.hpp"
#include "market_rewire/dtw.hpp"

namespace market_rewire {

/// Unordered node pair stored as (lower index, higher index).
using Edge = std::pair<std::size_t, std::size_t>;

/// Co-occurrence network. Edges index into `nodes`, are sorted, and have a < b.
struct Graph {
  Date end_date;
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
};

/// Differential network. Red edges: the pair moved apart. Blue edges: moved closer.
struct SignedGraph {
  Date end_date;
  std::vector<std::string> nodes;
  std::vector<Edge> red_edges;
  std::vector<Edge> blue_edges;
};

/// Edge (i, j) iff d[i][j] < theta. Every asset is kept as a node.
Graph cooccurrence_network(const DistanceMatrix& dm, double theta);

/// Maximal connected node sets, singletons included. Each component is sorted and the
/// list is ordered by smallest member.
std::vector<std::vector<std::size_t>> connected_components(const Graph& g);

/// Shannon entropy in bits of the node-count distribution over clusters. Empty input
/// (a graph without nodes) yields 0.
double graph_based_entropy(std::span<const std::size_t> cluster_sizes);
double graph_based_entropy(const std::vector<std::vector<std::size_t>>& components);

/// Elementwise x_t - x_prev. Throws PipelineError if the asset lists differ.
SquareMatrix difference_matrix(const DistanceMatrix& x_t, const DistanceMatrix& x_prev);

/// Red edge iff diff[i][j] > delta, blue edge iff diff[i][j] < -delta.
SignedGraph differential_network(const SquareMatrix& diff, double delta,
                                 std::vector<std::string> nodes, Date end_date);

struct HubSummary {
  /// Node indices whose blue-edge degree is >= the hub threshold.
  std::vector<std::size_t> closer;
  /// Node indices whose red-edge degree is >= the hub threshold.
  std::vector<std::size_t> farther;

  std::size_t n_closer() const noexcept { return closer.size(); }
  std::size_t n_farther() const noexcept { return farther.size(); }
};

/// Hub degrees are counted per colour; a node can be both kinds of hub.
HubSummary count_hubs(const SignedGraph& sg, std::size_t min_degree);

}  // namespace market_rewire
