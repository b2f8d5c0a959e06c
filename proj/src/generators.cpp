#include "node2vec/generators.hpp"

#include <stdexcept>
#include <unordered_set>

#include "node2vec/random.hpp"

namespace n2v {

Graph erdos_renyi_gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("G(n, m) needs at least two nodes");
  const double possible = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  if (static_cast<double>(m) > possible) throw std::invalid_argument("m exceeds the number of node pairs");
  Rng rng(seed);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m * 2);
  std::vector<Edge> edges;
  edges.reserve(m);
  while (edges.size() < m) {
    auto u = static_cast<NodeId>(rng.below(n));
    auto v = static_cast<NodeId>(rng.below(n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!seen.insert((static_cast<std::uint64_t>(u) << 32) | v).second) continue;
    edges.push_back({u, v, 1.0});
  }
  return Graph::from_edges(n, edges, false);
}

Graph planted_partition(std::size_t blocks, std::size_t block_size, double p_in, double p_out, std::uint64_t seed) {
  if (blocks == 0 || block_size == 0) throw std::invalid_argument("empty partition");
  const std::size_t n = blocks * block_size;
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double prob = (u / block_size == v / block_size) ? p_in : p_out;
      if (rng.uniform() < prob) edges.push_back({u, v, 1.0});
    }
  }
  return Graph::from_edges(n, edges, false);
}

}  // namespace n2v
