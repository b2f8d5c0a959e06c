#include "node2vec/walker.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "node2vec/errors.hpp"
#include "node2vec/parallel.hpp"

namespace n2v {

void WalkParams::validate() const {
  if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("p must be positive and finite");
  if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("q must be positive and finite");
  if (walk_length < 1) throw std::invalid_argument("walk length must be >= 1");
  if (walks_per_node < 1) throw std::invalid_argument("walks per node must be >= 1");
}

double alpha(double p, double q, BiasCase c) {
  switch (c) {
    case BiasCase::Return:
      return 1.0 / p;
    case BiasCase::Adjacent:
      return 1.0;
    case BiasCase::Outward:
      return 1.0 / q;
  }
  return 1.0;
}

BiasCase bias_case(const Graph& g, NodeId t, NodeId x) {
  if (x == t) return BiasCase::Return;
  return g.has_edge(t, x) ? BiasCase::Adjacent : BiasCase::Outward;
}

namespace {

// alpha * w for every x in neighbors(v), given the walk came from t.
// Adjacency of t and x is decided by merging the two sorted segments.
void biased_weights(const Graph& g, double p, double q, NodeId t, NodeId v, std::vector<double>& out) {
  const NeighborView from_t = g.neighbors(t);
  const NeighborView from_v = g.neighbors(v);
  out.resize(from_v.size());
  const double inv_p = 1.0 / p;
  const double inv_q = 1.0 / q;
  std::size_t j = 0;
  for (std::size_t i = 0; i < from_v.size(); ++i) {
    const NodeId x = from_v.ids[i];
    double a;
    if (x == t) {
      a = inv_p;
    } else {
      while (j < from_t.size() && from_t.ids[j] < x) ++j;
      a = (j < from_t.size() && from_t.ids[j] == x) ? 1.0 : inv_q;
    }
    out[i] = a * from_v.weights[i];
  }
}

std::vector<double> normalized(std::vector<double> w) {
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

}  // namespace

TransitionIndex TransitionIndex::build(const Graph& g, double p, double q, TransitionMode mode) {
  WalkParams{p, q, 1, 1}.validate();
  TransitionIndex index;
  index.p_ = p;
  index.q_ = q;
  index.mode_ = mode;

  const std::size_t n = g.num_nodes();
  index.first_prob_.resize(g.num_arcs());
  index.first_alias_.resize(g.num_arcs());
  for (NodeId v = 0; v < n; ++v) {
    const NeighborView nb = g.neighbors(v);
    if (nb.empty()) continue;
    const std::size_t b = g.arc_begin(v);
    build_alias_into(nb.weights, std::span(index.first_prob_).subspan(b, nb.size()),
                     std::span(index.first_alias_).subspan(b, nb.size()));
  }
  if (mode == TransitionMode::Lazy) return index;

  const auto offsets = g.offsets();
  const auto targets = g.flat_neighbors();
  index.second_offsets_.resize(g.num_arcs() + 1);
  index.second_offsets_[0] = 0;
  for (std::size_t a = 0; a < g.num_arcs(); ++a) {
    const NodeId v = targets[a];
    index.second_offsets_[a + 1] = index.second_offsets_[a] + (offsets[v + 1] - offsets[v]);
  }
  index.second_prob_.resize(index.second_offsets_.back());
  index.second_alias_.resize(index.second_offsets_.back());

  std::vector<double> weights;
  for (NodeId t = 0; t < n; ++t) {
    for (std::size_t a = offsets[t]; a < offsets[t + 1]; ++a) {
      const NodeId v = targets[a];
      const std::size_t b = index.second_offsets_[a];
      const std::size_t len = index.second_offsets_[a + 1] - b;
      if (len == 0) continue;
      biased_weights(g, p, q, t, v, weights);
      build_alias_into(weights, std::span(index.second_prob_).subspan(b, len),
                       std::span(index.second_alias_).subspan(b, len));
    }
  }
  return index;
}

std::size_t TransitionIndex::sample_first(const Graph& g, NodeId v, Rng& rng) const {
  const std::size_t b = g.arc_begin(v);
  const std::size_t len = g.degree(v);
  return sample_alias(std::span<const double>(first_prob_).subspan(b, len),
                      std::span<const std::uint32_t>(first_alias_).subspan(b, len), rng);
}

std::size_t TransitionIndex::sample_next(const Graph& g, NodeId t, NodeId v, std::size_t arc, Rng& rng) const {
  if (mode_ == TransitionMode::Precomputed) {
    const std::size_t b = second_offsets_[arc];
    const std::size_t len = second_offsets_[arc + 1] - b;
    return sample_alias(std::span<const double>(second_prob_).subspan(b, len),
                        std::span<const std::uint32_t>(second_alias_).subspan(b, len), rng);
  }
  thread_local std::vector<double> weights;
  biased_weights(g, p_, q_, t, v, weights);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  return weights.size() - 1;
}

std::vector<double> TransitionIndex::first_step_probabilities(const Graph& g, NodeId v) const {
  const std::size_t b = g.arc_begin(v);
  const std::size_t len = g.degree(v);
  if (len == 0) return {};
  return alias_outcome_masses(std::span<const double>(first_prob_).subspan(b, len),
                              std::span<const std::uint32_t>(first_alias_).subspan(b, len));
}

std::vector<double> TransitionIndex::second_step_probabilities(const Graph& g, NodeId t, NodeId v) const {
  const auto arc = g.arc_index(t, v);
  if (!arc) throw std::invalid_argument("no arc " + std::to_string(t) + "->" + std::to_string(v));
  if (g.degree(v) == 0) return {};
  if (mode_ == TransitionMode::Lazy) {
    std::vector<double> w;
    biased_weights(g, p_, q_, t, v, w);
    return normalized(std::move(w));
  }
  const std::size_t b = second_offsets_[*arc];
  const std::size_t len = second_offsets_[*arc + 1] - b;
  return alias_outcome_masses(std::span<const double>(second_prob_).subspan(b, len),
                              std::span<const std::uint32_t>(second_alias_).subspan(b, len));
}

void WalkCorpus::append(std::span<const NodeId> walk) {
  nodes.insert(nodes.end(), walk.begin(), walk.end());
  offsets.push_back(nodes.size());
}

namespace {

void walk_into(const TransitionIndex& index, const Graph& g, NodeId start, std::size_t length, Rng& rng,
               std::vector<NodeId>& out) {
  out.push_back(start);
  if (length < 2 || g.degree(start) == 0) return;
  std::size_t slot = index.sample_first(g, start, rng);
  std::size_t arc = g.arc_begin(start) + slot;
  NodeId prev = start;
  NodeId cur = g.flat_neighbors()[arc];
  out.push_back(cur);
  for (std::size_t len = 2; len < length; ++len) {
    if (g.degree(cur) == 0) break;
    slot = index.sample_next(g, prev, cur, arc, rng);
    arc = g.arc_begin(cur) + slot;
    prev = cur;
    cur = g.flat_neighbors()[arc];
    out.push_back(cur);
  }
}

constexpr std::uint64_t kShuffleStream = 0x5eedf00dULL;

}  // namespace

std::vector<NodeId> node2vec_walk(const TransitionIndex& index, const Graph& g, NodeId start,
                                  std::size_t length, Rng& rng) {
  if (start >= g.num_nodes()) throw std::out_of_range("start node out of range");
  if (length < 1) throw std::invalid_argument("walk length must be >= 1");
  std::vector<NodeId> walk;
  walk.reserve(length);
  walk_into(index, g, start, length, rng, walk);
  return walk;
}

WalkCorpus generate_walks(const TransitionIndex& index, const Graph& g, const WalkParams& params,
                          std::uint64_t seed, std::size_t workers) {
  params.validate();
  const std::size_t n = g.num_nodes();
  const std::size_t total = n * params.walks_per_node;

  // starts[i] is the start node of walk i
  std::vector<NodeId> starts(total);
  std::vector<NodeId> order(n);
  for (std::size_t pass = 0; pass < params.walks_per_node; ++pass) {
    std::iota(order.begin(), order.end(), NodeId{0});
    Rng rng = stream_rng(seed ^ kShuffleStream, pass);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    std::copy(order.begin(), order.end(), starts.begin() + static_cast<std::ptrdiff_t>(pass * n));
  }

  workers = std::max<std::size_t>(1, workers);
  std::vector<WalkCorpus> shards(std::min(workers, std::max<std::size_t>(total, 1)));
  parallel_for(total, shards.size(), [&](std::size_t begin, std::size_t end, std::size_t w) {
    WalkCorpus& shard = shards[w];
    shard.nodes.reserve((end - begin) * params.walk_length);
    shard.offsets.reserve(end - begin + 1);
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = stream_rng(seed, i);
      walk_into(index, g, starts[i], params.walk_length, rng, shard.nodes);
      shard.offsets.push_back(shard.nodes.size());
    }
  });

  WalkCorpus corpus;
  corpus.params = params;
  corpus.seed = seed;
  std::size_t total_nodes = 0;
  for (const auto& s : shards) total_nodes += s.nodes.size();
  corpus.nodes.reserve(total_nodes);
  corpus.offsets.reserve(total + 1);
  for (auto& s : shards) {
    const std::size_t base = corpus.nodes.size();
    corpus.nodes.insert(corpus.nodes.end(), s.nodes.begin(), s.nodes.end());
    for (std::size_t k = 1; k < s.offsets.size(); ++k) corpus.offsets.push_back(base + s.offsets[k]);
    s = WalkCorpus{};
  }
  return corpus;
}

std::vector<std::pair<NodeId, NodeId>> contexts_from_walk(std::span<const NodeId> walk, std::size_t window,
                                                          WindowMode mode) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for_each_context(walk, window, mode, [&](NodeId c, NodeId x) { pairs.emplace_back(c, x); });
  return pairs;
}

std::size_t context_pair_count(std::size_t walk_length, std::size_t window, WindowMode mode) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < walk_length; ++i) {
    const std::size_t after = std::min(window, walk_length - 1 - i);
    const std::size_t before = std::min(window, i);
    count += after + (mode == WindowMode::Symmetric ? before : 0);
  }
  return count;
}

void write_walks(std::ostream& out, const WalkCorpus& corpus, const Graph& g) {
  std::vector<std::string> names(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) names[v] = g.name(v);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto walk = corpus.walk(i);
    for (std::size_t j = 0; j < walk.size(); ++j) {
      if (j) out << ' ';
      out << names[walk[j]];
    }
    out << '\n';
  }
}

WalkCorpus read_walks(std::istream& in, const Graph& g) {
  WalkCorpus corpus;
  std::string line;
  std::string token;
  std::size_t line_no = 0;
  std::vector<NodeId> walk;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    walk.clear();
    while (fields >> token) {
      const auto id = g.find(token);
      if (!id) throw ParseError("unknown node '" + token + "' in walk", line_no);
      walk.push_back(*id);
    }
    if (!walk.empty()) corpus.append(walk);
  }
  if (corpus.size() == 0) throw ParseError("empty walk corpus", 0);
  return corpus;
}

}  // namespace n2v
