#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "node2vec/graph.hpp"
#include "node2vec/random.hpp"

namespace n2v::testing {

inline std::filesystem::path data_path(const std::string& file) { return std::filesystem::path(N2V_DATA_DIR) / file; }

inline Graph karate() { return read_edge_list(data_path("karate.edgelist"), false, false); }
inline Graph lesmis(bool weighted) { return read_edge_list(data_path("lesmis.edgelist"), false, weighted); }

// Each pair (or arc when directed) present with probability p; weights in
// [0.5, 2.5) when weighted, else 1.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed, bool directed = false,
                          bool weighted = false, bool self_loops = false) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = directed ? 0 : u; v < n; ++v) {
      if (u == v && !self_loops) continue;
      if (rng.uniform() < p) edges.push_back({u, v, weighted ? 0.5 + 2.0 * rng.uniform() : 1.0});
    }
  }
  return Graph::from_edges(n, edges, directed);
}

// Adjacency as sets, built from the edge list rather than the CSR arrays.
inline std::vector<std::set<NodeId>> adjacency_sets(const Graph& g) {
  std::vector<std::set<NodeId>> adj(g.num_nodes());
  for (const Edge& e : g.edges()) {
    adj[e.u].insert(e.v);
    if (!g.directed()) adj[e.v].insert(e.u);
  }
  return adj;
}

// Flood fill over the undirected view; labels by increasing smallest node.
inline std::vector<std::uint32_t> flood_fill_components(const Graph& g) {
  std::vector<std::set<NodeId>> adj(g.num_nodes());
  for (const Edge& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> label(g.num_nodes(), kUnset);
  std::uint32_t next = 0;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (label[s] != kUnset) continue;
    std::vector<NodeId> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      for (NodeId y : adj[x]) {
        if (label[y] == kUnset) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return label;
}

}  // namespace n2v::testing
