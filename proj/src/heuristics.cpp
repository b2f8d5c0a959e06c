#include "node2vec/heuristics.hpp"

#include <cmath>
#include <stdexcept>

namespace n2v {

std::string_view heuristic_name(Heuristic h) {
  switch (h) {
    case Heuristic::CommonNeighbors:
      return "common_neighbors";
    case Heuristic::Jaccard:
      return "jaccard";
    case Heuristic::AdamicAdar:
      return "adamic_adar";
    case Heuristic::PreferentialAttachment:
      return "preferential_attachment";
  }
  return "?";
}

double heuristic_score(Heuristic h, const Graph& g, NodeId u, NodeId v) {
  if (g.directed()) throw std::invalid_argument("heuristic scores need an undirected graph");
  const auto nu = g.neighbors(u).ids;
  const auto nv = g.neighbors(v).ids;
  if (h == Heuristic::PreferentialAttachment) {
    return static_cast<double>(nu.size()) * static_cast<double>(nv.size());
  }

  std::size_t common = 0;
  double adamic_adar = 0.0;
  for (std::size_t i = 0, j = 0; i < nu.size() && j < nv.size();) {
    if (nu[i] < nv[j]) {
      ++i;
    } else if (nv[j] < nu[i]) {
      ++j;
    } else {
      ++common;
      const std::size_t deg = g.degree(nu[i]);
      if (deg > 1) adamic_adar += 1.0 / std::log(static_cast<double>(deg));
      ++i;
      ++j;
    }
  }
  switch (h) {
    case Heuristic::CommonNeighbors:
      return static_cast<double>(common);
    case Heuristic::Jaccard: {
      const std::size_t uni = nu.size() + nv.size() - common;
      return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
    }
    case Heuristic::AdamicAdar:
      return adamic_adar;
    case Heuristic::PreferentialAttachment:
      break;
  }
  return 0.0;
}

}  // namespace n2v
