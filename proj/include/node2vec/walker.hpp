#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "node2vec/alias.hpp"
#include "node2vec/graph.hpp"
#include "node2vec/random.hpp"

namespace n2v {

struct WalkParams {
  double p = 1.0;                   // return parameter
  double q = 1.0;                   // in-out parameter
  std::size_t walk_length = 80;     // nodes per walk, start included
  std::size_t walks_per_node = 10;

  // Throws std::invalid_argument when a field is out of bounds.
  void validate() const;
};

// Shortest-path distance d_tx between the previous node t and a candidate x,
// which is always a neighbor of the current node.
enum class BiasCase : std::uint8_t { Return = 0, Adjacent = 1, Outward = 2 };

double alpha(double p, double q, BiasCase c);
BiasCase bias_case(const Graph& g, NodeId t, NodeId x);

enum class TransitionMode {
  Precomputed,  // one alias table per arc: O(sum of deg^2) memory, O(1) per step
  Lazy,         // weights recomputed at each step: O(|E|) memory, O(deg) per step
};

// Sampling tables for the biased walk. Tables for arc (t,v) have exactly
// degree(v) slots ordered like neighbors(v); arcs into sinks have none.
class TransitionIndex {
 public:
  static TransitionIndex build(const Graph& g, double p, double q,
                               TransitionMode mode = TransitionMode::Precomputed);

  double p() const { return p_; }
  double q() const { return q_; }
  TransitionMode mode() const { return mode_; }

  // Slot in neighbors(v) for the first step out of v (static weights only).
  // v must have at least one out-neighbor.
  std::size_t sample_first(const Graph& g, NodeId v, Rng& rng) const;
  // Slot in neighbors(v) after traversing the arc stored at flat position
  // `arc` (t -> v). v must have at least one out-neighbor.
  std::size_t sample_next(const Graph& g, NodeId t, NodeId v, std::size_t arc, Rng& rng) const;

  // Normalized next-step distribution over neighbors(v), read back from the
  // alias table (or computed directly in lazy mode).
  std::vector<double> first_step_probabilities(const Graph& g, NodeId v) const;
  std::vector<double> second_step_probabilities(const Graph& g, NodeId t, NodeId v) const;

  // Number of alias slots held; zero in lazy mode aside from first-step tables.
  std::size_t table_slots() const { return first_prob_.size() + second_prob_.size(); }

 private:
  double p_ = 1.0;
  double q_ = 1.0;
  TransitionMode mode_ = TransitionMode::Precomputed;
  // First-step tables share the graph's CSR offsets.
  std::vector<double> first_prob_;
  std::vector<std::uint32_t> first_alias_;
  // Second-step table of arc a lives in [second_offsets_[a], second_offsets_[a+1]).
  std::vector<std::size_t> second_offsets_;
  std::vector<double> second_prob_;
  std::vector<std::uint32_t> second_alias_;
};

// Walks stored back to back; walk i is nodes[offsets[i] .. offsets[i+1]).
struct WalkCorpus {
  std::vector<NodeId> nodes;
  std::vector<std::size_t> offsets{0};
  WalkParams params;
  std::uint64_t seed = 0;

  std::size_t size() const { return offsets.size() - 1; }
  std::span<const NodeId> walk(std::size_t i) const {
    return std::span<const NodeId>(nodes).subspan(offsets[i], offsets[i + 1] - offsets[i]);
  }
  void append(std::span<const NodeId> walk);
};

// Single walk of at most `length` nodes from `start`; stops early at a sink.
std::vector<NodeId> node2vec_walk(const TransitionIndex& index, const Graph& g, NodeId start,
                                  std::size_t length, Rng& rng);

// r passes over all nodes, each pass in a seeded shuffled order. Walk i uses
// the RNG stream (seed, i), so the corpus does not depend on `workers`.
WalkCorpus generate_walks(const TransitionIndex& index, const Graph& g, const WalkParams& params,
                          std::uint64_t seed, std::size_t workers = 1);

enum class WindowMode {
  Symmetric,    // |j - i| <= k, both directions (training default)
  ForwardOnly,  // i < j <= i + k
};

// Calls fn(center, context) for every pair inside the window.
template <typename Fn>
void for_each_context(std::span<const NodeId> walk, std::size_t window, WindowMode mode, Fn&& fn) {
  const std::size_t n = walk.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = (mode == WindowMode::Symmetric && i > window) ? i - window
                           : mode == WindowMode::Symmetric               ? 0
                                                                         : i + 1;
    const std::size_t hi = std::min(n - 1, i + window);
    for (std::size_t j = lo; j <= hi && j < n; ++j) {
      if (j != i) fn(walk[i], walk[j]);
    }
  }
}

std::vector<std::pair<NodeId, NodeId>> contexts_from_walk(std::span<const NodeId> walk, std::size_t window,
                                                          WindowMode mode = WindowMode::Symmetric);

// Pair count for_each_context would produce, without enumerating.
std::size_t context_pair_count(std::size_t walk_length, std::size_t window, WindowMode mode);

// One walk per line, node names separated by single spaces.
void write_walks(std::ostream& out, const WalkCorpus& corpus, const Graph& g);
// Inverse of write_walks. Unknown node names raise ParseError with the line.
WalkCorpus read_walks(std::istream& in, const Graph& g);

}  // namespace n2v
