#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <vector>

#include "node2vec/classify.hpp"
#include "node2vec/graph.hpp"
#include "node2vec/heuristics.hpp"
#include "support.hpp"

// Brute-force reference implementations shared by unit and acceptance tests.
namespace n2v::testing {

// Fraction of (positive, negative) pairs ordered correctly, ties half.
inline double brute_auc(const std::vector<double>& s, const std::vector<std::uint8_t>& t) {
  double good = 0.0, total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (t[i] && !t[j]) {
        total += 1.0;
        good += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
      }
    }
  }
  return good / total;
}

// Per-label F1 from precision and recall; 0 when undefined.
inline double brute_f1_label(const std::vector<LabelSet>& pred, const std::vector<LabelSet>& truth, std::uint32_t l) {
  double tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = std::count(pred[i].begin(), pred[i].end(), l) > 0;
    const bool t = std::count(truth[i].begin(), truth[i].end(), l) > 0;
    tp += p && t;
    fp += p && !t;
    fn += !p && t;
  }
  const double precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
  const double recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  return precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
}

// Unnormalized second-order weights straight from the definition, using the
// adjacency sets of the edge list for d(t, x).
inline std::vector<double> brute_second_step(const Graph& g, double p, double q, NodeId t, NodeId v) {
  const auto adj = n2v::testing::adjacency_sets(g);
  std::vector<double> w;
  const auto nb = g.neighbors(v);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    const NodeId x = nb.ids[i];
    const double a = x == t ? 1.0 / p : adj[t].count(x) ? 1.0 : 1.0 / q;
    w.push_back(a * nb.weights[i]);
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

// Normalized edge weights out of v.
inline std::vector<double> first_order(const Graph& g, NodeId v) {
  const auto nb = g.neighbors(v);
  std::vector<double> w(nb.weights.begin(), nb.weights.end());
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

// Neighborhood-set versions of the four link heuristics.
inline double brute_heuristic(Heuristic h, const Graph& g, NodeId u, NodeId v) {
  const auto adj = adjacency_sets(g);
  std::vector<NodeId> common, all;
  std::set_intersection(adj[u].begin(), adj[u].end(), adj[v].begin(), adj[v].end(), std::back_inserter(common));
  std::set_union(adj[u].begin(), adj[u].end(), adj[v].begin(), adj[v].end(), std::back_inserter(all));
  switch (h) {
    case Heuristic::CommonNeighbors:
      return static_cast<double>(common.size());
    case Heuristic::Jaccard:
      return all.empty() ? 0.0 : static_cast<double>(common.size()) / static_cast<double>(all.size());
    case Heuristic::AdamicAdar: {
      double s = 0.0;
      for (NodeId z : common) {
        if (adj[z].size() > 1) s += 1.0 / std::log(static_cast<double>(adj[z].size()));
      }
      return s;
    }
    case Heuristic::PreferentialAttachment:
      return static_cast<double>(adj[u].size() * adj[v].size());
  }
  return 0.0;
}

}  // namespace n2v::testing
