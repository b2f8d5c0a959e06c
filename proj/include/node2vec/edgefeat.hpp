#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace n2v {

// Componentwise binary operators turning two node vectors into one edge vector
// of the same dimension. All four are symmetric in their arguments.
enum class EdgeOperator { Average, Hadamard, WeightedL1, WeightedL2 };

inline constexpr std::array<EdgeOperator, 4> kEdgeOperators = {
    EdgeOperator::Average, EdgeOperator::Hadamard, EdgeOperator::WeightedL1, EdgeOperator::WeightedL2};

// CLI names: average | hadamard | l1 | l2.
std::string_view operator_name(EdgeOperator op);
EdgeOperator parse_edge_operator(std::string_view name);

// Writes g(u,v) into out. Throws std::invalid_argument on size mismatch.
void edge_feature(EdgeOperator op, std::span<const float> fu, std::span<const float> fv, std::span<double> out);
std::vector<double> edge_feature(EdgeOperator op, std::span<const float> fu, std::span<const float> fv);

}  // namespace n2v
