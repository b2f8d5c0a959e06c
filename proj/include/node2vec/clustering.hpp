#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "node2vec/graph.hpp"

namespace n2v {

struct KMeansResult {
  std::vector<std::uint32_t> labels;
  Eigen::MatrixXd centroids;          // k x dims
  std::vector<double> inertia_history;  // after each assignment step
  std::size_t iterations = 0;
  bool converged = false;             // assignment reached a fixpoint

  double inertia() const { return inertia_history.empty() ? 0.0 : inertia_history.back(); }
};

// k-means++ seeding followed by Lloyd iterations until the assignment stops
// changing or max_iterations. A cluster that empties is reseeded at the point
// farthest from its centroid. Rows of `points` are the observations.
KMeansResult kmeans(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iterations = 300);

// Newman modularity of a node partition on an undirected (weighted) graph.
double modularity(const Graph& g, std::span<const std::uint32_t> communities);

}  // namespace n2v
