#include "node2vec/learn.hpp"

#include <chrono>

namespace n2v {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

EmbeddingMatrix learn_features(const Graph& g, const WalkParams& walk, const TrainConfig& train,
                               TransitionMode mode, std::uint64_t walk_seed, std::size_t walk_workers,
                               PhaseTimings* timings) {
  walk.validate();
  train.validate();
  auto t0 = std::chrono::steady_clock::now();
  const TransitionIndex index = TransitionIndex::build(g, walk.p, walk.q, mode);
  const double preprocess = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const WalkCorpus corpus = generate_walks(index, g, walk, walk_seed, walk_workers);
  const double walking = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  EmbeddingMatrix f = n2v::train(corpus, g.num_nodes(), train);
  if (timings) *timings = {preprocess, walking, seconds_since(t0)};
  return f;
}

}  // namespace n2v
