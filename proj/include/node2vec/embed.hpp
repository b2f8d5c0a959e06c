#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "node2vec/alias.hpp"
#include "node2vec/graph.hpp"
#include "node2vec/walker.hpp"

namespace n2v {

enum class NegativeDistribution {
  Unigram075,  // corpus occurrence counts raised to 0.75
  Uniform,
};

struct TrainConfig {
  std::size_t dimensions = 128;
  std::size_t window = 10;
  std::size_t negatives = 5;
  std::size_t epochs = 1;
  double initial_step = 0.025;
  double min_step = 1e-4;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  NegativeDistribution negative_distribution = NegativeDistribution::Unigram075;

  void validate() const;
};

// Node vectors (`input`, the learned f) plus the context vectors used only
// while training. Both are row-major num_nodes x dimensions.
namespace detail {
void* allocate_rows(std::size_t bytes);
void free_rows(void* p) noexcept;
}  // namespace detail

// Large buffers get 2 MiB alignment and a transparent huge page hint, which
// cuts TLB misses when training touches rows at random.
template <typename T>
struct RowAllocator {
  using value_type = T;
  RowAllocator() = default;
  template <typename U>
  RowAllocator(const RowAllocator<U>&) {}
  T* allocate(std::size_t n) { return static_cast<T*>(detail::allocate_rows(n * sizeof(T))); }
  void deallocate(T* p, std::size_t) noexcept { detail::free_rows(p); }
  friend bool operator==(const RowAllocator&, const RowAllocator&) { return true; }
};

class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t rows, std::size_t dims)
      : rows_(rows), dims_(dims), input_(rows * dims, 0.0f), context_(rows * dims, 0.0f) {}

  std::size_t rows() const { return rows_; }
  std::size_t dims() const { return dims_; }

  std::span<float> input_row(std::size_t v) { return {input_.data() + v * dims_, dims_}; }
  std::span<const float> input_row(std::size_t v) const { return {input_.data() + v * dims_, dims_}; }
  std::span<float> context_row(std::size_t v) { return {context_.data() + v * dims_, dims_}; }
  std::span<const float> context_row(std::size_t v) const { return {context_.data() + v * dims_, dims_}; }

  std::span<const float> input() const { return input_; }
  std::span<const float> context() const { return context_; }

  bool all_finite() const;

  friend bool operator==(const EmbeddingMatrix&, const EmbeddingMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dims_ = 0;
  std::vector<float, RowAllocator<float>> input_;
  std::vector<float, RowAllocator<float>> context_;
};

// input ~ U[-0.5/d, 0.5/d), context = 0.
EmbeddingMatrix init_embeddings(std::size_t num_nodes, const TrainConfig& config);

inline constexpr double kSigmoidClip = 6.0;

// Evaluated in T, so float training uses the single-precision exp.
template <typename T>
T clipped_sigmoid(T x) {
  constexpr T clip = static_cast<T>(kSigmoidClip);
  x = x < -clip ? -clip : x > clip ? clip : x;
  return T(1) / (T(1) + std::exp(-x));
}

template <typename T>
T dot_product(const T* a, const T* b, std::size_t d) {
  using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
  const auto n = static_cast<Eigen::Index>(d);
  return Eigen::Map<const Vec>(a, n).dot(Eigen::Map<const Vec>(b, n));
}

// y += g * x
template <typename T>
void scaled_add(T* __restrict y, const T* __restrict x, T g, std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) y[i] += g * x[i];
}

// Loss of one (center, context) pair with sampled negatives:
//   -log s(c.x_pos) - sum_j log s(-c.x_neg_j),   s = clipped sigmoid.
// targets[0] is the positive context row; the rest are negatives.
template <typename T>
double sgns_pair_loss(std::span<const T> center, std::span<const std::span<T>> targets) {
  double loss = 0.0;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    double dot = 0.0;
    for (std::size_t i = 0; i < center.size(); ++i) dot += static_cast<double>(center[i]) * targets[j][i];
    const double s = clipped_sigmoid<double>(j == 0 ? dot : -dot);
    loss -= std::log(s);
  }
  return loss;
}

// One descent step on sgns_pair_loss: every target row moves against its
// gradient evaluated at the incoming center row, then the center row moves
// by its accumulated gradient. `scratch` must hold center.size() values.
// Returns the loss before the step (0 when with_loss is false), or NaN if a
// dot product was not finite.
template <typename T>
double sgns_step(std::span<T> center, std::span<const std::span<T>> targets, double step,
                 std::span<T> scratch, bool with_loss = true) {
  const std::size_t d = center.size();
  T* c = center.data();
  T* acc = scratch.data();
  for (std::size_t i = 0; i < d; ++i) acc[i] = T(0);
  double loss = 0.0;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    T* row = targets[j].data();
    const T dot = dot_product<T>(c, row, d);
    if (!std::isfinite(static_cast<double>(dot))) return std::nan("");
    const double label = j == 0 ? 1.0 : 0.0;
    const T s = clipped_sigmoid<T>(dot);
    if (with_loss) loss -= std::log(j == 0 ? static_cast<double>(s) : 1.0 - s);
    // d loss / d dot = s - label
    const T g = static_cast<T>((label - s) * step);
    scaled_add<T>(acc, row, g, d);
    scaled_add<T>(row, c, g, d);
  }
  scaled_add<T>(c, acc, T(1), d);
  return loss;
}

// sgns_step applied to rows of `m`. Returns the pair's loss before the update.
double sgns_update(EmbeddingMatrix& m, NodeId center, NodeId context, std::span<const NodeId> negatives,
                   double step);

class NegativeSampler {
 public:
  NegativeSampler(const WalkCorpus& corpus, std::size_t num_nodes, NegativeDistribution dist);

  NodeId sample(Rng& rng) const { return static_cast<NodeId>(table_.sample(rng)); }
  std::vector<double> probabilities() const { return table_.outcome_masses(); }

 private:
  AliasTable table_;
};

struct TrainHooks {
  // Called with pairs processed so far after every `checkpoint_every` pairs
  // and once at the end. Single-worker training only.
  std::function<void(std::size_t, const EmbeddingMatrix&)> on_checkpoint;
  std::size_t checkpoint_every = 0;
};

std::size_t corpus_pair_count(const WalkCorpus& corpus, std::size_t window);

// Skip-gram with negative sampling over the symmetric walk contexts.
// Throws NumericError naming the pair index on a non-finite value.
EmbeddingMatrix train(const WalkCorpus& corpus, std::size_t num_nodes, const TrainConfig& config,
                      const TrainHooks& hooks = {});

// Per-node multiset of window contexts collected from the corpus.
std::vector<std::vector<NodeId>> collect_neighborhoods(const WalkCorpus& corpus, std::size_t num_nodes,
                                                       std::size_t window);

// sum_u [ -log Z_u + sum_{n in N(u)} f(n).f(u) ] with Z_u = sum_v exp(f(u).f(v))
// evaluated exactly over the input vectors. Refuses more than 10^4 nodes.
double exact_objective(const EmbeddingMatrix& f, const std::vector<std::vector<NodeId>>& neighborhoods);

// Throws std::invalid_argument for a zero vector.
double cosine_similarity(const EmbeddingMatrix& f, NodeId u, NodeId v);

// "<rows> <dims>" header then "<name> v1 ... vd" per node in index order.
void write_embeddings(std::ostream& out, const EmbeddingMatrix& f, const Graph& g);
// Reads the format above into the input rows, mapping names through g.
EmbeddingMatrix read_embeddings(std::istream& in, const Graph& g);

}  // namespace n2v
