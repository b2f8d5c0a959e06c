#include "node2vec/clustering.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "node2vec/random.hpp"

namespace n2v {

namespace {

// Assigns each point to its nearest centroid (lowest index on ties).
// Returns the inertia of the assignment.
double assign(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids, std::vector<std::uint32_t>& labels,
              std::vector<double>& dist) {
  double inertia = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t arg = 0;
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
      const double d = (points.row(i) - centroids.row(c)).squaredNorm();
      if (d < best) {
        best = d;
        arg = static_cast<std::uint32_t>(c);
      }
    }
    labels[static_cast<std::size_t>(i)] = arg;
    dist[static_cast<std::size_t>(i)] = best;
    inertia += best;
  }
  return inertia;
}

Eigen::MatrixXd plus_plus_seeds(const Eigen::MatrixXd& points, std::size_t k, Rng& rng) {
  const auto n = static_cast<std::size_t>(points.rows());
  Eigen::MatrixXd centroids(static_cast<Eigen::Index>(k), points.cols());
  std::vector<double> closest(n, std::numeric_limits<double>::infinity());
  std::size_t pick = rng.below(n);
  for (std::size_t c = 0; c < k; ++c) {
    centroids.row(static_cast<Eigen::Index>(c)) = points.row(static_cast<Eigen::Index>(pick));
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      closest[i] = std::min(closest[i], (points.row(static_cast<Eigen::Index>(i)) -
                                         centroids.row(static_cast<Eigen::Index>(c)))
                                            .squaredNorm());
      total += closest[i];
    }
    if (c + 1 == k) break;
    if (total <= 0.0) {
      // every point already coincides with a chosen seed
      pick = rng.below(n);
      continue;
    }
    double target = rng.uniform() * total;
    pick = n - 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (target < closest[i]) {
        pick = i;
        break;
      }
      target -= closest[i];
    }
  }
  return centroids;
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed, std::size_t max_iterations) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  const auto n = static_cast<std::size_t>(points.rows());
  if (k > n) throw std::invalid_argument("k exceeds the number of points");

  Rng rng(seed);
  KMeansResult result;
  result.centroids = plus_plus_seeds(points, k, rng);
  result.labels.assign(n, 0);
  std::vector<double> dist(n);
  result.inertia_history.push_back(assign(points, result.centroids, result.labels, dist));

  std::vector<std::size_t> sizes(k);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    result.iterations = it + 1;
    // update step
    result.centroids.setZero();
    std::fill(sizes.begin(), sizes.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      result.centroids.row(result.labels[i]) += points.row(static_cast<Eigen::Index>(i));
      ++sizes[result.labels[i]];
    }
    std::vector<bool> taken(n, false);
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] > 0) {
        result.centroids.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(sizes[c]);
        continue;
      }
      // empty cluster: move it onto the point farthest from its centroid
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!taken[i] && dist[i] > far_d) {
          far_d = dist[i];
          far = i;
        }
      }
      taken[far] = true;
      result.centroids.row(static_cast<Eigen::Index>(c)) = points.row(static_cast<Eigen::Index>(far));
    }

    const std::vector<std::uint32_t> previous = result.labels;
    result.inertia_history.push_back(assign(points, result.centroids, result.labels, dist));
    if (result.labels == previous) {
      result.converged = true;
      break;
    }
  }
  return result;
}

double modularity(const Graph& g, std::span<const std::uint32_t> communities) {
  if (g.directed()) throw std::invalid_argument("modularity is defined here for undirected graphs");
  if (communities.size() != g.num_nodes()) throw std::invalid_argument("one community per node required");
  const std::uint32_t count = communities.empty() ? 0 : *std::max_element(communities.begin(), communities.end()) + 1;
  std::vector<double> inside(count, 0.0);
  std::vector<double> degree_sum(count, 0.0);
  double two_m = 0.0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const auto nb = g.neighbors(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      // a self-loop contributes twice to its node's degree
      const double w = nb.ids[i] == u ? 2.0 * nb.weights[i] : nb.weights[i];
      degree_sum[communities[u]] += w;
      two_m += w;
      if (communities[nb.ids[i]] == communities[u]) inside[communities[u]] += w;
    }
  }
  if (two_m == 0.0) return 0.0;
  double q = 0.0;
  for (std::uint32_t c = 0; c < count; ++c) {
    q += inside[c] / two_m - (degree_sum[c] / two_m) * (degree_sum[c] / two_m);
  }
  return q;
}

}  // namespace n2v
