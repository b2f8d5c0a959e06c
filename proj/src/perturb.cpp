#include "node2vec/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "node2vec/errors.hpp"
#include "node2vec/random.hpp"

namespace n2v {

std::vector<Edge> removable_edge_sequence(const Graph& g, std::uint64_t seed) {
  std::vector<Edge> order = g.edges();
  Rng rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

  // Greedy deletion in this order removes an edge iff it is not a bridge of
  // what remains, which keeps exactly the spanning forest that Kruskal builds
  // when scanning the order backwards. Everything outside it is removable.
  std::vector<std::uint32_t> parent(g.num_nodes());
  std::iota(parent.begin(), parent.end(), 0u);
  auto root = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<bool> in_forest(order.size(), false);
  for (std::size_t i = order.size(); i-- > 0;) {
    const auto a = root(order[i].u);
    const auto b = root(order[i].v);
    if (a != b) {
      parent[a] = b;
      in_forest[i] = true;
    }
  }
  std::vector<Edge> removable;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!in_forest[i]) removable.push_back(order[i]);
  }
  return removable;
}

namespace {

std::vector<std::string> names_of(const Graph& g) {
  if (!g.has_names()) return {};
  std::vector<std::string> names(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) names[v] = g.name(v);
  return names;
}

}  // namespace

PerturbResult perturb_graph(const Graph& g, PerturbMode mode, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0) || !std::isfinite(fraction)) throw std::invalid_argument("fraction must be >= 0");
  const std::vector<Edge> edges = g.edges();
  const auto target = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(edges.size())));
  PerturbResult result;
  if (target == 0) {
    result.graph = g;
    return result;
  }

  if (mode == PerturbMode::RemoveMissing) {
    const std::vector<Edge> removable = removable_edge_sequence(g, seed);
    const std::size_t count = std::min(target, removable.size());
    result.truncated = count < target;
    std::set<std::pair<NodeId, NodeId>> drop;
    for (std::size_t i = 0; i < count; ++i) drop.emplace(removable[i].u, removable[i].v);
    std::vector<Edge> kept;
    kept.reserve(edges.size() - count);
    for (const Edge& e : edges) {
      if (!drop.count({e.u, e.v})) kept.push_back(e);
    }
    result.graph = Graph::from_edges(g.num_nodes(), kept, g.directed(), names_of(g));
    result.changed = count;
    return result;
  }

  const double n = static_cast<double>(g.num_nodes());
  const double possible = g.directed() ? n * (n - 1.0) : n * (n - 1.0) / 2.0;
  std::size_t non_self = 0;
  for (const Edge& e : edges) non_self += e.u != e.v;
  const double available = possible - static_cast<double>(non_self);
  if (available < static_cast<double>(target)) {
    throw DataError("not enough non-edges to insert " + std::to_string(target) + " noisy edges");
  }
  Rng rng(seed);
  std::set<std::pair<NodeId, NodeId>> added;
  std::vector<Edge> all = edges;
  while (added.size() < target) {
    auto u = static_cast<NodeId>(rng.below(g.num_nodes()));
    auto v = static_cast<NodeId>(rng.below(g.num_nodes()));
    if (u == v) continue;
    if (!g.directed() && u > v) std::swap(u, v);
    if (g.has_edge(u, v) || !added.emplace(u, v).second) continue;
    all.push_back({u, v, 1.0});
  }
  result.graph = Graph::from_edges(g.num_nodes(), all, g.directed(), names_of(g));
  result.changed = target;
  return result;
}

}  // namespace n2v
