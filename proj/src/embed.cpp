#include "node2vec/embed.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <sys/mman.h>

#include "node2vec/errors.hpp"
#include "node2vec/parallel.hpp"

namespace n2v {

void TrainConfig::validate() const {
  if (dimensions < 1) throw std::invalid_argument("dimensions must be >= 1");
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (negatives < 1) throw std::invalid_argument("negatives must be >= 1");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(initial_step > 0.0) || !std::isfinite(initial_step)) {
    throw std::invalid_argument("initial step size must be positive");
  }
  if (!(min_step >= 0.0) || min_step > initial_step) {
    throw std::invalid_argument("min step size must lie in [0, initial step]");
  }
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

namespace detail {

namespace {
constexpr std::size_t kHugePage = std::size_t{1} << 21;
}

void* allocate_rows(std::size_t bytes) {
  if (bytes < 2 * kHugePage) {
    void* p = std::malloc(std::max<std::size_t>(bytes, 1));
    if (!p) throw std::bad_alloc();
    return p;
  }
  const std::size_t rounded = (bytes + kHugePage - 1) / kHugePage * kHugePage;
  void* p = std::aligned_alloc(kHugePage, rounded);
  if (!p) throw std::bad_alloc();
  madvise(p, rounded, MADV_HUGEPAGE);  // a hint; failure is harmless
  return p;
}

void free_rows(void* p) noexcept { std::free(p); }

}  // namespace detail

bool EmbeddingMatrix::all_finite() const {
  auto finite = [](float x) { return std::isfinite(x); };
  return std::all_of(input_.begin(), input_.end(), finite) &&
         std::all_of(context_.begin(), context_.end(), finite);
}

EmbeddingMatrix init_embeddings(std::size_t num_nodes, const TrainConfig& config) {
  if (num_nodes < 1) throw std::invalid_argument("need at least one node");
  if (config.dimensions < 1) throw std::invalid_argument("dimensions must be >= 1");
  EmbeddingMatrix m(num_nodes, config.dimensions);
  Rng rng = stream_rng(config.seed, 0);
  const double half_width = 0.5 / static_cast<double>(config.dimensions);
  for (std::size_t v = 0; v < num_nodes; ++v) {
    for (float& x : m.input_row(v)) {
      x = static_cast<float>((rng.uniform() * 2.0 - 1.0) * half_width);
      // float rounding can land exactly on the open upper bound
      if (x >= half_width) x = std::nextafter(static_cast<float>(half_width), 0.0f);
      if (x < -half_width) x = std::nextafter(static_cast<float>(-half_width), 0.0f);
    }
  }
  return m;
}

double sgns_update(EmbeddingMatrix& m, NodeId center, NodeId context, std::span<const NodeId> negatives,
                   double step) {
  std::vector<std::span<float>> targets;
  targets.reserve(1 + negatives.size());
  targets.push_back(m.context_row(context));
  for (NodeId n : negatives) targets.push_back(m.context_row(n));
  std::vector<float> scratch(m.dims());
  return sgns_step<float>(m.input_row(center), targets, step, scratch);
}

NegativeSampler::NegativeSampler(const WalkCorpus& corpus, std::size_t num_nodes, NegativeDistribution dist) {
  std::vector<double> weights(num_nodes, 0.0);
  if (dist == NegativeDistribution::Uniform) {
    std::fill(weights.begin(), weights.end(), 1.0);
  } else {
    for (NodeId v : corpus.nodes) weights.at(v) += 1.0;
    for (double& w : weights) w = std::pow(w, 0.75);
  }
  table_ = AliasTable(weights);
}

std::size_t corpus_pair_count(const WalkCorpus& corpus, std::size_t window) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    total += context_pair_count(corpus.offsets[i + 1] - corpus.offsets[i], window, WindowMode::Symmetric);
  }
  return total;
}

namespace {

constexpr std::size_t kMaxNegativeRedraws = 64;

// Negatives are drawn a few samples ahead so their context rows can be
// prefetched. Draw order is unchanged, so results match on-demand sampling.
class NegativeQueue {
 public:
  NegativeQueue(const EmbeddingMatrix& m, const NegativeSampler& s, Rng r) : m_(m), sampler_(s), rng_(r) {
    for (std::size_t i = 0; i < kAhead; ++i) push();
  }

  NodeId next() {
    const NodeId n = ring_[head_ & kMask];
    ++head_;
    push();
    return n;
  }

 private:
  static constexpr std::size_t kAhead = 12;
  static constexpr std::size_t kMask = 15;

  void push() {
    const NodeId n = sampler_.sample(rng_);
    ring_[tail_ & kMask] = n;
    ++tail_;
    const auto row = m_.context_row(n);
    const char* bytes = reinterpret_cast<const char*>(row.data());
    for (std::size_t off = 0; off < row.size_bytes(); off += 64) __builtin_prefetch(bytes + off, 1, 3);
  }

  const EmbeddingMatrix& m_;
  const NegativeSampler& sampler_;
  Rng rng_;
  std::array<NodeId, kMask + 1> ring_{};
  std::size_t head_ = 0;
  std::size_t tail_ = 0;
};

// Per-worker training state reused across pairs.
struct PairTrainer {
  EmbeddingMatrix& m;
  NegativeQueue queue;
  std::size_t negatives;
  std::vector<std::span<float>> targets;
  std::vector<float> scratch;

  PairTrainer(EmbeddingMatrix& matrix, const NegativeSampler& s, std::size_t neg, Rng r)
      : m(matrix), queue(matrix, s, r), negatives(neg), scratch(matrix.dims()) {
    targets.reserve(1 + neg);
  }

  double step(NodeId center, NodeId context, double lr) {
    targets.clear();
    targets.push_back(m.context_row(context));
    for (std::size_t k = 0; k < negatives; ++k) {
      NodeId n = queue.next();
      std::size_t tries = 0;
      while (n == context && tries++ < kMaxNegativeRedraws) n = queue.next();
      if (n != context) targets.push_back(m.context_row(n));
    }
    return sgns_step<float>(m.input_row(center), targets, lr, scratch, false);
  }
};

}  // namespace

EmbeddingMatrix train(const WalkCorpus& corpus, std::size_t num_nodes, const TrainConfig& config,
                      const TrainHooks& hooks) {
  config.validate();
  if (corpus.size() == 0) throw std::invalid_argument("cannot train on an empty corpus");
  EmbeddingMatrix m = init_embeddings(num_nodes, config);
  const NegativeSampler sampler(corpus, num_nodes, config.negative_distribution);

  const std::size_t pairs_per_epoch = corpus_pair_count(corpus, config.window);
  const double total_pairs = static_cast<double>(std::max<std::size_t>(1, pairs_per_epoch * config.epochs));
  auto step_size = [&](std::size_t done) {
    const double frac = std::min(1.0, static_cast<double>(done) / total_pairs);
    return config.initial_step + (config.min_step - config.initial_step) * frac;
  };
  auto fail = [](std::size_t pair, NodeId center, NodeId context) {
    throw NumericError("non-finite value at training pair " + std::to_string(pair) + " (center " +
                       std::to_string(center) + ", context " + std::to_string(context) + ")");
  };

  if (config.workers == 1) {
    PairTrainer trainer(m, sampler, config.negatives, stream_rng(config.seed, 1));
    std::size_t done = 0;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
      for (std::size_t w = 0; w < corpus.size(); ++w) {
        const double lr = step_size(done);
        for_each_context(corpus.walk(w), config.window, WindowMode::Symmetric, [&](NodeId c, NodeId x) {
          const double loss = trainer.step(c, x, lr);
          if (!std::isfinite(loss)) fail(done, c, x);
          ++done;
          if (hooks.on_checkpoint && hooks.checkpoint_every > 0 && done % hooks.checkpoint_every == 0) {
            hooks.on_checkpoint(done, m);
          }
        });
      }
    }
    if (hooks.on_checkpoint) hooks.on_checkpoint(done, m);
  } else {
    // Lock-free shared updates; workers own contiguous walk shards.
    std::atomic<std::size_t> done{0};
    constexpr std::size_t kPublishEvery = 4096;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
      parallel_for(corpus.size(), config.workers, [&](std::size_t begin, std::size_t end, std::size_t wid) {
        PairTrainer trainer(m, sampler, config.negatives,
                            stream_rng(config.seed, 1 + epoch * config.workers + wid));
        std::size_t local = 0;
        std::size_t seen = done.load(std::memory_order_relaxed);
        for (std::size_t w = begin; w < end; ++w) {
          const double lr = step_size(seen + local);
          for_each_context(corpus.walk(w), config.window, WindowMode::Symmetric, [&](NodeId c, NodeId x) {
            const double loss = trainer.step(c, x, lr);
            if (!std::isfinite(loss)) fail(seen + local, c, x);
            if (++local == kPublishEvery) {
              seen = done.fetch_add(local, std::memory_order_relaxed) + local;
              local = 0;
            }
          });
        }
        done.fetch_add(local, std::memory_order_relaxed);
      });
    }
    if (hooks.on_checkpoint) hooks.on_checkpoint(done.load(), m);
  }
  if (!m.all_finite()) throw NumericError("non-finite embedding values after training");
  return m;
}

std::vector<std::vector<NodeId>> collect_neighborhoods(const WalkCorpus& corpus, std::size_t num_nodes,
                                                       std::size_t window) {
  std::vector<std::vector<NodeId>> hoods(num_nodes);
  for (std::size_t w = 0; w < corpus.size(); ++w) {
    for_each_context(corpus.walk(w), window, WindowMode::Symmetric,
                     [&](NodeId c, NodeId x) { hoods.at(c).push_back(x); });
  }
  return hoods;
}

double exact_objective(const EmbeddingMatrix& f, const std::vector<std::vector<NodeId>>& neighborhoods) {
  constexpr std::size_t kMaxNodes = 10000;
  const std::size_t n = f.rows();
  if (n > kMaxNodes) throw std::invalid_argument("exact objective is limited to 10^4 nodes");
  if (neighborhoods.size() != n) throw std::invalid_argument("one neighborhood per node required");
  auto dot = [&](NodeId a, NodeId b) {
    const auto x = f.input_row(a);
    const auto y = f.input_row(b);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(x[i]) * y[i];
    return s;
  };
  std::vector<double> dots(n);
  double total = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    double peak = -std::numeric_limits<double>::infinity();
    for (NodeId v = 0; v < n; ++v) {
      dots[v] = dot(u, v);
      peak = std::max(peak, dots[v]);
    }
    double z = 0.0;
    for (NodeId v = 0; v < n; ++v) z += std::exp(dots[v] - peak);
    const double log_z = peak + std::log(z);
    double attraction = 0.0;
    for (NodeId x : neighborhoods[u]) attraction += dots.at(x);
    total += attraction - log_z;
  }
  return total;
}

double cosine_similarity(const EmbeddingMatrix& f, NodeId u, NodeId v) {
  const auto x = f.input_row(u);
  const auto y = f.input_row(v);
  double xy = 0.0, xx = 0.0, yy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xy += static_cast<double>(x[i]) * y[i];
    xx += static_cast<double>(x[i]) * x[i];
    yy += static_cast<double>(y[i]) * y[i];
  }
  if (xx == 0.0 || yy == 0.0) throw std::invalid_argument("cosine similarity of a zero vector");
  return std::clamp(xy / std::sqrt(xx * yy), -1.0, 1.0);
}

void write_embeddings(std::ostream& out, const EmbeddingMatrix& f, const Graph& g) {
  if (f.rows() != g.num_nodes()) throw std::invalid_argument("embedding rows do not match graph");
  out << f.rows() << ' ' << f.dims() << '\n';
  for (NodeId v = 0; v < f.rows(); ++v) {
    out << g.name(v);
    for (float x : f.input_row(v)) out << ' ' << format_number(x);
    out << '\n';
  }
}

EmbeddingMatrix read_embeddings(std::istream& in, const Graph& g) {
  std::string line;
  std::size_t rows = 0, dims = 0;
  if (!std::getline(in, line)) throw ParseError("missing embedding header", 1);
  {
    std::istringstream header(line);
    if (!(header >> rows >> dims) || dims == 0) throw ParseError("bad embedding header", 1);
  }
  if (rows != g.num_nodes()) {
    throw DataError("embedding has " + std::to_string(rows) + " rows but graph has " +
                    std::to_string(g.num_nodes()) + " nodes");
  }
  EmbeddingMatrix m(rows, dims);
  std::vector<bool> seen(rows, false);
  std::size_t line_no = 1;
  std::string token;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    if (!(fields >> token)) continue;
    const auto id = g.find(token);
    if (!id) throw ParseError("unknown node '" + token + "'", line_no);
    auto row = m.input_row(*id);
    for (std::size_t i = 0; i < dims; ++i) {
      std::string value;
      if (!(fields >> value)) throw ParseError("expected " + std::to_string(dims) + " values", line_no);
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), row[i]);
      if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ParseError("bad number '" + value + "'", line_no);
      }
    }
    seen[*id] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw DataError("embedding file does not cover every node");
  }
  return m;
}

}  // namespace n2v
