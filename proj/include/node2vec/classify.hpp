#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "node2vec/embed.hpp"
#include "node2vec/graph.hpp"
#include "node2vec/logreg.hpp"

namespace n2v {

using LabelSet = std::vector<std::uint32_t>;

// Per-node label sets over a dense label universe; an empty set marks an
// unlabeled node.
struct LabeledNodes {
  std::vector<LabelSet> labels;
  std::vector<std::string> label_names;

  std::size_t num_labels() const { return label_names.size(); }
  std::vector<NodeId> labeled_nodes() const;
};

// "<node_name> <label> [<label> ...]" per line. Label tokens are mapped to
// dense ids in first-appearance order. Unknown node names raise ParseError.
LabeledNodes parse_labels(std::istream& in, const Graph& g);
LabeledNodes read_labels(const std::filesystem::path& path, const Graph& g);

// Input rows of f as a dense feature matrix.
Eigen::MatrixXd node_features(const EmbeddingMatrix& f);
Eigen::MatrixXd select_rows(const Eigen::MatrixXd& x, std::span<const NodeId> rows);

// For each row, the top counts[row] labels by score; ties go to the lower label id.
std::vector<LabelSet> multilabel_predict(const Eigen::MatrixXd& scores, std::span<const std::size_t> counts);

// Macro: unweighted mean of per-label F1 (a label never predicted and never
// true scores 0). Micro: F1 of the pooled counts.
double macro_f1(std::span<const LabelSet> predicted, std::span<const LabelSet> truth, std::size_t num_labels);
double micro_f1(std::span<const LabelSet> predicted, std::span<const LabelSet> truth, std::size_t num_labels);

struct F1Scores {
  double macro = 0.0;
  double micro = 0.0;
};

// Trains one-vs-rest on train_nodes and scores top-c predictions on test_nodes.
F1Scores evaluate_node_split(const Eigen::MatrixXd& features, const LabeledNodes& labels,
                             std::span<const NodeId> train_nodes, std::span<const NodeId> test_nodes,
                             const LogRegOptions& options = {});

struct ClassificationReport {
  double train_fraction = 0.0;
  std::vector<F1Scores> splits;

  F1Scores mean() const;
  F1Scores stddev() const;
};

// `repeats` seeded random splits of the labeled nodes, train_fraction for training.
ClassificationReport classification_experiment(const Eigen::MatrixXd& features, const LabeledNodes& labels,
                                               double train_fraction, std::uint64_t seed,
                                               std::size_t repeats = 10, const LogRegOptions& options = {});

// Mean Macro-F1 of k-fold cross-validation over `nodes`.
double cross_validated_macro_f1(const Eigen::MatrixXd& features, const LabeledNodes& labels,
                                std::span<const NodeId> nodes, std::size_t folds, std::uint64_t seed,
                                const LogRegOptions& options = {});

}  // namespace n2v
