#include "node2vec/edgefeat.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace n2v {

std::string_view operator_name(EdgeOperator op) {
  switch (op) {
    case EdgeOperator::Average:
      return "average";
    case EdgeOperator::Hadamard:
      return "hadamard";
    case EdgeOperator::WeightedL1:
      return "l1";
    case EdgeOperator::WeightedL2:
      return "l2";
  }
  return "?";
}

EdgeOperator parse_edge_operator(std::string_view name) {
  for (EdgeOperator op : kEdgeOperators) {
    if (operator_name(op) == name) return op;
  }
  throw std::invalid_argument("unknown edge operator '" + std::string(name) +
                              "' (expected average, hadamard, l1 or l2)");
}

void edge_feature(EdgeOperator op, std::span<const float> fu, std::span<const float> fv, std::span<double> out) {
  if (fu.size() != fv.size() || out.size() != fu.size()) {
    throw std::invalid_argument("edge feature dimension mismatch");
  }
  for (std::size_t i = 0; i < fu.size(); ++i) {
    const double a = fu[i];
    const double b = fv[i];
    switch (op) {
      case EdgeOperator::Average:
        out[i] = (a + b) / 2.0;
        break;
      case EdgeOperator::Hadamard:
        out[i] = a * b;
        break;
      case EdgeOperator::WeightedL1:
        out[i] = std::abs(a - b);
        break;
      case EdgeOperator::WeightedL2:
        out[i] = (a - b) * (a - b);
        break;
    }
  }
}

std::vector<double> edge_feature(EdgeOperator op, std::span<const float> fu, std::span<const float> fv) {
  std::vector<double> out(fu.size());
  edge_feature(op, fu, fv, out);
  return out;
}

}  // namespace n2v
