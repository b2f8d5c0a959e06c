#pragma once

#include <cstdint>

#include "node2vec/embed.hpp"
#include "node2vec/graph.hpp"
#include "node2vec/random.hpp"
#include "node2vec/walker.hpp"

namespace n2v {

// Wall-clock seconds of each phase of feature learning.
struct PhaseTimings {
  double preprocess = 0.0;
  double walk = 0.0;
  double train = 0.0;

  double total() const { return preprocess + walk + train; }
};

// Seed of the walk phase for a run seeded with `seed`; training uses `seed`
// itself. Every entry point derives it the same way so that file-based and
// in-process pipelines agree.
inline std::uint64_t walk_seed_for(std::uint64_t seed) { return derive_seed(seed, 0x77616c6bULL); }

// Transition preprocessing, walk simulation and SGNS training in sequence.
// Walks use `walk_seed`; training uses train.seed. walk_workers also caps the
// walk thread pool.
EmbeddingMatrix learn_features(const Graph& g, const WalkParams& walk, const TrainConfig& train,
                               TransitionMode mode, std::uint64_t walk_seed, std::size_t walk_workers = 1,
                               PhaseTimings* timings = nullptr);

}  // namespace n2v
