#include "market_rewire/networks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace market_rewire {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Keeps the smaller index as root so roots are deterministic.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Graph cooccurrence_network(const DistanceMatrix& dm, double theta) {
  if (!(theta > 0)) throw std::invalid_argument("co-occurrence threshold must be > 0");
  Graph g{dm.end_date, dm.asset_ids, {}};
  const std::size_t n = dm.d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dm.d(i, j) < theta) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

std::vector<std::vector<std::size_t>> connected_components(const Graph& g) {
  const std::size_t n = g.nodes.size();
  DisjointSets sets(n);
  for (auto [a, b] : g.edges) sets.unite(a, b);

  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t root = sets.find(v);
    if (slot[root] == n) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].push_back(v);
  }
  return out;
}

double graph_based_entropy(std::span<const std::size_t> cluster_sizes) {
  double total = 0;
  for (auto s : cluster_sizes) total += static_cast<double>(s);
  if (total == 0) return 0.0;
  double h = 0;
  for (auto s : cluster_sizes) {
    if (s == 0) continue;
    const double p = static_cast<double>(s) / total;
    h -= p * std::log2(p);
  }
  // A single cluster gives -1 * log2(1) = -0.0; report it as plain zero.
  return h == 0 ? 0.0 : h;
}

double graph_based_entropy(const std::vector<std::vector<std::size_t>>& components) {
  std::vector<std::size_t> sizes;
  sizes.reserve(components.size());
  for (const auto& c : components) sizes.push_back(c.size());
  return graph_based_entropy(sizes);
}

SquareMatrix difference_matrix(const DistanceMatrix& x_t, const DistanceMatrix& x_prev) {
  if (x_t.asset_ids != x_prev.asset_ids || x_t.d.size() != x_prev.d.size()) {
    throw PipelineError("difference_matrix: asset sets of " + format_date(x_t.end_date) + " and " +
                        format_date(x_prev.end_date) + " differ");
  }
  const std::size_t n = x_t.d.size();
  SquareMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = x_t.d(i, j) - x_prev.d(i, j);
  }
  return out;
}

SignedGraph differential_network(const SquareMatrix& diff, double delta,
                                 std::vector<std::string> nodes, Date end_date) {
  if (!(delta > 0)) throw std::invalid_argument("differential threshold must be > 0");
  if (nodes.size() != diff.size()) {
    throw std::invalid_argument("differential_network: node count does not match matrix size");
  }
  SignedGraph sg{end_date, std::move(nodes), {}, {}};
  const std::size_t n = diff.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = diff(i, j);
      if (v > delta) {
        sg.red_edges.emplace_back(i, j);
      } else if (v < -delta) {
        sg.blue_edges.emplace_back(i, j);
      }
    }
  }
  return sg;
}

HubSummary count_hubs(const SignedGraph& sg, std::size_t min_degree) {
  if (min_degree < 1) throw std::invalid_argument("hub degree threshold must be >= 1");
  const std::size_t n = sg.nodes.size();
  std::vector<std::size_t> blue(n, 0), red(n, 0);
  for (auto [a, b] : sg.blue_edges) {
    ++blue[a];
    ++blue[b];
  }
  for (auto [a, b] : sg.red_edges) {
    ++red[a];
    ++red[b];
  }
  HubSummary hubs;
  for (std::size_t v = 0; v < n; ++v) {
    if (blue[v] >= min_degree) hubs.closer.push_back(v);
    if (red[v] >= min_degree) hubs.farther.push_back(v);
  }
  return hubs;
}

}  // namespace market_rewire
