#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "node2vec/graph.hpp"

namespace n2v {

// Uniform G(n, m): m distinct undirected edges, no self-loops.
Graph erdos_renyi_gnm(std::size_t n, std::size_t m, std::uint64_t seed);

// `blocks` groups of `block_size` nodes; each pair is linked with p_in inside a
// group and p_out across. Block of node v is v / block_size.
Graph planted_partition(std::size_t blocks, std::size_t block_size, double p_in, double p_out, std::uint64_t seed);

}  // namespace n2v
