#pragma once

#include <cstdint>
#include <span>

#include "node2vec/graph.hpp"

namespace n2v {

struct ScoredPair {
  NodeId u = 0;
  NodeId v = 0;
  double score = 0.0;
  bool truth = false;
};

// Area under the ROC curve as the Mann-Whitney statistic: the fraction of
// (positive, negative) pairs ranked correctly, ties counting one half.
// Throws std::invalid_argument unless both classes are present.
double auc(std::span<const ScoredPair> scored);
double auc(std::span<const double> scores, std::span<const std::uint8_t> truth);

}  // namespace n2v
