#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "node2vec/edgefeat.hpp"
#include "node2vec/embed.hpp"
#include "node2vec/graph.hpp"
#include "node2vec/heuristics.hpp"
#include "node2vec/logreg.hpp"
#include "node2vec/walker.hpp"

namespace n2v {

struct NodePair {
  NodeId u = 0;
  NodeId v = 0;
};

struct LinkPredDataset {
  Graph residual;                  // original graph minus the positives
  std::vector<NodePair> positives;  // removed true edges
  std::vector<NodePair> negatives;  // sampled non-edges of the original graph
  std::uint64_t seed = 0;
  bool truncated = false;           // fewer removable edges than requested
};

// Removes floor(fraction * |E|) edges in seeded random order, skipping any
// whose removal would disconnect the residual, then samples as many distinct
// non-adjacent node pairs. Throws DataError for directed or disconnected input.
LinkPredDataset make_linkpred_split(const Graph& g, double removal_fraction, std::uint64_t seed);

// Positives then negatives; rows of the returned matrix follow the same order.
Eigen::MatrixXd edge_features(const EmbeddingMatrix& f, EdgeOperator op, std::span<const NodePair> pairs);

// Out-of-fold probabilities from a logistic regression fitted on the other
// folds. Labels are 0/1; fold membership is a seeded shuffle.
std::vector<double> cross_fitted_scores(const Eigen::MatrixXd& x, std::span<const std::uint8_t> labels,
                                        std::size_t folds, std::uint64_t seed, const LogRegOptions& options = {});

struct MetricRow {
  std::string method;  // edge operator or heuristic name
  double auc = 0.0;
};

struct LinkPredReport {
  std::vector<MetricRow> rows;
  std::size_t positives = 0;
  bool truncated = false;

  double auc_of(std::string_view method) const;
};

struct LinkPredConfig {
  WalkParams walk;
  TrainConfig train;
  double removal_fraction = 0.5;
  std::size_t folds = 5;
  LogRegOptions logreg;
  std::vector<EdgeOperator> operators{kEdgeOperators.begin(), kEdgeOperators.end()};
  TransitionMode mode = TransitionMode::Precomputed;
  std::size_t workers = 1;
};

// AUC for every configured operator (embedding learned on the residual) and
// for all four heuristics scored on the residual.
LinkPredReport evaluate_linkpred(const LinkPredDataset& data, const EmbeddingMatrix& f, const LinkPredConfig& config,
                                 std::uint64_t seed);

// Split, learn features on the residual, evaluate.
LinkPredReport linkpred_pipeline(const Graph& g, const LinkPredConfig& config, std::uint64_t seed);

}  // namespace n2v
