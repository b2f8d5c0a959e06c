#include "node2vec/alias.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace n2v {

void build_alias_into(std::span<const double> weights, std::span<double> prob,
                      std::span<std::uint32_t> alias) {
  const std::size_t n = weights.size();
  if (n == 0) throw std::invalid_argument("alias table needs at least one weight");
  if (prob.size() != n || alias.size() != n) throw std::invalid_argument("alias output size mismatch");

  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("alias weights must be finite and >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("alias weights sum to zero");

  // Scaled so that the mean slot holds exactly 1.
  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  small.reserve(n);
  large.reserve(n);
  const double scale = static_cast<double>(n) / total;
  for (std::size_t i = 0; i < n; ++i) {
    prob[i] = weights[i] * scale;
    alias[i] = static_cast<std::uint32_t>(i);
    (prob[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    alias[s] = l;
    prob[l] = (prob[l] + prob[s]) - 1.0;
    if (prob[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers differ from 1 only by rounding drift.
  for (std::uint32_t i : large) prob[i] = 1.0;
  for (std::uint32_t i : small) prob[i] = 1.0;
  for (std::size_t i = 0; i < n; ++i) prob[i] = std::clamp(prob[i], 0.0, 1.0);
}

std::vector<double> alias_outcome_masses(std::span<const double> prob,
                                         std::span<const std::uint32_t> alias) {
  const std::size_t n = prob.size();
  std::vector<double> mass(n, 0.0);
  const double share = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    mass[i] += prob[i] * share;
    mass[alias[i]] += (1.0 - prob[i]) * share;
  }
  return mass;
}

AliasTable::AliasTable(std::span<const double> weights)
    : prob_(weights.size()), alias_(weights.size()) {
  build_alias_into(weights, prob_, alias_);
}

}  // namespace n2v
