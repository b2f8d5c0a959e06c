#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "node2vec/graph.hpp"

namespace n2v {

// Edges in a seeded random order, restricted to those that can be deleted one
// after another without raising the number of connected components. Deleting
// any prefix of the result keeps the component count of g.
std::vector<Edge> removable_edge_sequence(const Graph& g, std::uint64_t seed);

enum class PerturbMode {
  RemoveMissing,  // delete edges, component count held fixed
  AddNoisy,       // insert uniformly random non-edges of weight 1
};

struct PerturbResult {
  Graph graph;
  std::size_t changed = 0;  // edges removed or added
  bool truncated = false;   // fewer than requested were possible (removal only)
};

// `fraction` is relative to the current edge count. Throws DataError when
// noisy insertion is asked of a graph with no non-edges left.
PerturbResult perturb_graph(const Graph& g, PerturbMode mode, double fraction, std::uint64_t seed);

}  // namespace n2v
