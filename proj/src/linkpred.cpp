#include "node2vec/linkpred.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "node2vec/auc.hpp"
#include "node2vec/errors.hpp"
#include "node2vec/learn.hpp"
#include "node2vec/perturb.hpp"
#include "node2vec/random.hpp"

namespace n2v {

namespace {

std::vector<std::string> names_of(const Graph& g) {
  if (!g.has_names()) return {};
  std::vector<std::string> names(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) names[v] = g.name(v);
  return names;
}

constexpr std::uint64_t kNegativeStream = 0x6e6567ULL;
constexpr std::uint64_t kFoldStream = 0x666f6c64ULL;

}  // namespace

LinkPredDataset make_linkpred_split(const Graph& g, double removal_fraction, std::uint64_t seed) {
  if (g.directed()) throw DataError("link prediction split needs an undirected graph");
  if (!(removal_fraction >= 0.0 && removal_fraction < 1.0)) {
    throw std::invalid_argument("removal fraction must lie in [0, 1)");
  }
  if (count_components(g) != 1) throw DataError("link prediction split needs a connected graph");

  const std::vector<Edge> edges = g.edges();
  const auto target = static_cast<std::size_t>(std::floor(removal_fraction * static_cast<double>(edges.size())));
  const std::vector<Edge> removable = removable_edge_sequence(g, seed);

  LinkPredDataset data;
  data.seed = seed;
  const std::size_t count = std::min(target, removable.size());
  data.truncated = count < target;
  std::set<std::pair<NodeId, NodeId>> removed;
  for (std::size_t i = 0; i < count; ++i) {
    removed.emplace(removable[i].u, removable[i].v);
    data.positives.push_back({removable[i].u, removable[i].v});
  }
  std::vector<Edge> kept;
  kept.reserve(edges.size() - count);
  for (const Edge& e : edges) {
    if (!removed.count({e.u, e.v})) kept.push_back(e);
  }
  data.residual = Graph::from_edges(g.num_nodes(), kept, false, names_of(g));

  const double n = static_cast<double>(g.num_nodes());
  std::size_t non_loop = 0;
  for (const Edge& e : edges) non_loop += e.u != e.v;
  if (n * (n - 1.0) / 2.0 - static_cast<double>(non_loop) < static_cast<double>(count)) {
    throw DataError("not enough non-adjacent pairs for negative sampling");
  }
  Rng rng = stream_rng(seed, kNegativeStream);
  std::set<std::pair<NodeId, NodeId>> sampled;
  while (data.negatives.size() < count) {
    auto u = static_cast<NodeId>(rng.below(g.num_nodes()));
    auto v = static_cast<NodeId>(rng.below(g.num_nodes()));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (g.has_edge(u, v) || !sampled.emplace(u, v).second) continue;
    data.negatives.push_back({u, v});
  }
  return data;
}

Eigen::MatrixXd edge_features(const EmbeddingMatrix& f, EdgeOperator op, std::span<const NodePair> pairs) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(pairs.size()), static_cast<Eigen::Index>(f.dims()));
  std::vector<double> row(f.dims());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    edge_feature(op, f.input_row(pairs[i].u), f.input_row(pairs[i].v), row);
    for (std::size_t j = 0; j < row.size(); ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
    }
  }
  return x;
}

std::vector<double> cross_fitted_scores(const Eigen::MatrixXd& x, std::span<const std::uint8_t> labels,
                                        std::size_t folds, std::uint64_t seed, const LogRegOptions& options) {
  const auto n = static_cast<std::size_t>(x.rows());
  if (labels.size() != n) throw std::invalid_argument("one label per feature row required");
  if (folds < 2 || folds > n) throw std::invalid_argument("fold count must lie in [2, rows]");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  std::vector<std::size_t> fold_of(n);
  for (std::size_t k = 0; k < n; ++k) fold_of[order[k]] = k * folds / n;

  std::vector<double> scores(n, 0.0);
  for (std::size_t k = 0; k < folds; ++k) {
    std::vector<Eigen::Index> train_rows, test_rows;
    for (std::size_t i = 0; i < n; ++i) {
      (fold_of[i] == k ? test_rows : train_rows).push_back(static_cast<Eigen::Index>(i));
    }
    Eigen::MatrixXd xtrain = x(train_rows, Eigen::all);
    Eigen::VectorXd ytrain(static_cast<Eigen::Index>(train_rows.size()));
    for (std::size_t i = 0; i < train_rows.size(); ++i) {
      ytrain[static_cast<Eigen::Index>(i)] = labels[static_cast<std::size_t>(train_rows[i])];
    }
    const LogisticModel model = fit_logistic(xtrain, ytrain, options);
    const Eigen::VectorXd p = model.predict_proba(x(test_rows, Eigen::all));
    for (std::size_t i = 0; i < test_rows.size(); ++i) {
      scores[static_cast<std::size_t>(test_rows[i])] = p[static_cast<Eigen::Index>(i)];
    }
  }
  return scores;
}

double LinkPredReport::auc_of(std::string_view method) const {
  for (const auto& r : rows) {
    if (r.method == method) return r.auc;
  }
  throw std::out_of_range("no AUC row for " + std::string(method));
}

LinkPredReport evaluate_linkpred(const LinkPredDataset& data, const EmbeddingMatrix& f, const LinkPredConfig& config,
                                 std::uint64_t seed) {
  std::vector<NodePair> pairs = data.positives;
  pairs.insert(pairs.end(), data.negatives.begin(), data.negatives.end());
  std::vector<std::uint8_t> truth(pairs.size(), 0);
  std::fill(truth.begin(), truth.begin() + static_cast<std::ptrdiff_t>(data.positives.size()), 1);

  LinkPredReport report;
  report.positives = data.positives.size();
  report.truncated = data.truncated;
  for (EdgeOperator op : config.operators) {
    const Eigen::MatrixXd x = edge_features(f, op, pairs);
    const auto scores = cross_fitted_scores(x, truth, config.folds, stream_rng(seed, kFoldStream)(), config.logreg);
    report.rows.push_back({std::string(operator_name(op)), auc(scores, truth)});
  }
  for (Heuristic h : kHeuristics) {
    std::vector<double> scores;
    scores.reserve(pairs.size());
    for (const NodePair& p : pairs) scores.push_back(heuristic_score(h, data.residual, p.u, p.v));
    report.rows.push_back({std::string(heuristic_name(h)), auc(scores, truth)});
  }
  return report;
}

LinkPredReport linkpred_pipeline(const Graph& g, const LinkPredConfig& config, std::uint64_t seed) {
  const LinkPredDataset data = make_linkpred_split(g, config.removal_fraction, seed);
  if (data.positives.empty()) throw DataError("no removable edges; the graph is a tree");
  TrainConfig train = config.train;
  train.seed = seed;
  const EmbeddingMatrix f =
      learn_features(data.residual, config.walk, train, config.mode, walk_seed_for(seed), config.workers);
  return evaluate_linkpred(data, f, config, seed);
}

}  // namespace n2v
