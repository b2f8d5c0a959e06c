#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "node2vec/classify.hpp"
#include "node2vec/embed.hpp"
#include "node2vec/graph.hpp"
#include "node2vec/linkpred.hpp"
#include "node2vec/walker.hpp"

namespace n2v {

inline constexpr std::array<double, 5> kPqGrid = {0.25, 0.5, 1.0, 2.0, 4.0};

struct GridCell {
  double p = 1.0;
  double q = 1.0;
  double score = 0.0;
};

struct GridSearchResult {
  std::vector<GridCell> cells;  // p-major over kPqGrid x kPqGrid
  GridCell best;
};

// Highest score; exact ties prefer (1, 1), then the earliest cell.
GridCell select_best(std::span<const GridCell> cells);

// Scores an embedding learned for one (p, q) cell.
using CellEvaluator = std::function<double(const EmbeddingMatrix& f)>;

// For each of the 25 cells: one walk corpus and one embedding, handed to
// `evaluate` (which reuses them across its folds). Cells run on up to
// `workers` threads, each single-threaded, and are merged by cell index.
GridSearchResult grid_search_pq(const Graph& g, const WalkParams& base, const TrainConfig& train,
                                const CellEvaluator& evaluate, std::uint64_t seed,
                                TransitionMode mode = TransitionMode::Precomputed, std::size_t workers = 1);

struct GridSearchOptions {
  double labeled_fraction = 0.1;
  std::size_t folds = 10;
  LogRegOptions logreg;
  TransitionMode mode = TransitionMode::Precomputed;
  std::size_t workers = 1;
};

// Mean Macro-F1 of k-fold CV on a seeded labeled_fraction subset of the labeled
// nodes (at least `folds` nodes).
GridSearchResult grid_search_classification(const Graph& g, const LabeledNodes& labels, const WalkParams& base,
                                            const TrainConfig& train, std::uint64_t seed,
                                            const GridSearchOptions& options = {});

// Embeddings learned on the residual; cross-fitted Hadamard AUC on a seeded
// labeled_fraction subset of the positive and negative pairs.
GridSearchResult grid_search_linkpred(const LinkPredDataset& data, const WalkParams& base, const TrainConfig& train,
                                      std::uint64_t seed, const GridSearchOptions& options = {});

}  // namespace n2v
