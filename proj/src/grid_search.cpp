#include "node2vec/grid_search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "node2vec/auc.hpp"
#include "node2vec/errors.hpp"
#include "node2vec/learn.hpp"
#include "node2vec/parallel.hpp"
#include "node2vec/random.hpp"

namespace n2v {

GridCell select_best(std::span<const GridCell> cells) {
  if (cells.empty()) throw std::invalid_argument("empty grid");
  double top = cells.front().score;
  for (const auto& c : cells) top = std::max(top, c.score);
  const GridCell* chosen = nullptr;
  for (const auto& c : cells) {
    if (c.score != top) continue;
    if (c.p == 1.0 && c.q == 1.0) return c;
    if (!chosen) chosen = &c;
  }
  return *chosen;
}

GridSearchResult grid_search_pq(const Graph& g, const WalkParams& base, const TrainConfig& train,
                                const CellEvaluator& evaluate, std::uint64_t seed, TransitionMode mode,
                                std::size_t workers) {
  GridSearchResult result;
  for (double p : kPqGrid) {
    for (double q : kPqGrid) result.cells.push_back({p, q, 0.0});
  }
  TrainConfig cell_train = train;
  cell_train.workers = 1;
  cell_train.seed = seed;
  parallel_for(result.cells.size(), workers, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      WalkParams params = base;
      params.p = result.cells[i].p;
      params.q = result.cells[i].q;
      const EmbeddingMatrix f = learn_features(g, params, cell_train, mode, walk_seed_for(seed), 1);
      result.cells[i].score = evaluate(f);
    }
  });
  result.best = select_best(result.cells);
  return result;
}

namespace {

std::size_t subset_size(std::size_t available, double fraction, std::size_t folds) {
  const auto wanted = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(available)));
  return std::min(available, std::max(wanted, folds));
}

template <typename T>
void seeded_shuffle(std::vector<T>& items, std::uint64_t seed) {
  Rng rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng.below(i)]);
}

}  // namespace

GridSearchResult grid_search_classification(const Graph& g, const LabeledNodes& labels, const WalkParams& base,
                                            const TrainConfig& train, std::uint64_t seed,
                                            const GridSearchOptions& options) {
  std::vector<NodeId> nodes = labels.labeled_nodes();
  if (nodes.size() < options.folds) throw DataError("fewer labeled nodes than cross-validation folds");
  seeded_shuffle(nodes, derive_seed(seed, 1));
  nodes.resize(subset_size(nodes.size(), options.labeled_fraction, options.folds));

  const CellEvaluator evaluate = [&](const EmbeddingMatrix& f) {
    return cross_validated_macro_f1(node_features(f), labels, nodes, options.folds, derive_seed(seed, 2),
                                    options.logreg);
  };
  return grid_search_pq(g, base, train, evaluate, seed, options.mode, options.workers);
}

GridSearchResult grid_search_linkpred(const LinkPredDataset& data, const WalkParams& base, const TrainConfig& train,
                                      std::uint64_t seed, const GridSearchOptions& options) {
  std::vector<NodePair> pos = data.positives;
  std::vector<NodePair> neg = data.negatives;
  seeded_shuffle(pos, derive_seed(seed, 3));
  seeded_shuffle(neg, derive_seed(seed, 4));
  const std::size_t half = std::max<std::size_t>(
      1, subset_size(std::min(pos.size(), neg.size()), options.labeled_fraction, (options.folds + 1) / 2));
  if (pos.size() < half || neg.size() < half || 2 * half < options.folds) {
    throw DataError("too few labeled pairs for cross-validation");
  }
  std::vector<NodePair> pairs(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(half));
  pairs.insert(pairs.end(), neg.begin(), neg.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<std::uint8_t> truth(pairs.size(), 0);
  std::fill(truth.begin(), truth.begin() + static_cast<std::ptrdiff_t>(half), 1);

  const CellEvaluator evaluate = [&](const EmbeddingMatrix& f) {
    const Eigen::MatrixXd x = edge_features(f, EdgeOperator::Hadamard, pairs);
    const auto scores = cross_fitted_scores(x, truth, options.folds, derive_seed(seed, 5), options.logreg);
    return auc(scores, truth);
  };
  return grid_search_pq(data.residual, base, train, evaluate, seed, options.mode, options.workers);
}

}  // namespace n2v
