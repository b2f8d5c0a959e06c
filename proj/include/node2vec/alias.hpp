#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "node2vec/random.hpp"

namespace n2v {

// Fills prob/alias (both of size weights.size()) using Vose's method.
// Zero weights are allowed; an empty, negative, non-finite or all-zero
// weight vector throws std::invalid_argument.
void build_alias_into(std::span<const double> weights, std::span<double> prob,
                      std::span<std::uint32_t> alias);

// Constant-time draw from a table stored in caller-owned spans.
inline std::size_t sample_alias(std::span<const double> prob, std::span<const std::uint32_t> alias,
                                Rng& rng) {
  const std::size_t slot = rng.below(prob.size());
  return rng.uniform() < prob[slot] ? slot : alias[slot];
}

// Probability mass each outcome receives from a table: slot i keeps prob[i]
// of its 1/n share and routes the rest to alias[i].
std::vector<double> alias_outcome_masses(std::span<const double> prob,
                                         std::span<const std::uint32_t> alias);

class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const { return prob_.size(); }
  bool empty() const { return prob_.empty(); }

  std::size_t sample(Rng& rng) const { return sample_alias(prob_, alias_, rng); }

  std::span<const double> prob() const { return prob_; }
  std::span<const std::uint32_t> alias() const { return alias_; }
  std::vector<double> outcome_masses() const { return alias_outcome_masses(prob_, alias_); }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace n2v
