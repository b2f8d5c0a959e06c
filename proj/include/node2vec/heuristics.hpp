#pragma once

#include <array>
#include <string_view>

#include "node2vec/graph.hpp"

namespace n2v {

enum class Heuristic { CommonNeighbors, Jaccard, AdamicAdar, PreferentialAttachment };

inline constexpr std::array<Heuristic, 4> kHeuristics = {
    Heuristic::CommonNeighbors, Heuristic::Jaccard, Heuristic::AdamicAdar, Heuristic::PreferentialAttachment};

std::string_view heuristic_name(Heuristic h);

// Neighborhood-overlap score for the pair (u, v) on an undirected graph.
// Jaccard of two empty neighborhoods is 0. Adamic-Adar skips common
// neighbors of degree 1, whose 1/log(1) term is unbounded.
double heuristic_score(Heuristic h, const Graph& g, NodeId u, NodeId v);

}  // namespace n2v
