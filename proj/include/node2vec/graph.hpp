#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace n2v {

using NodeId = std::uint32_t;

struct EdgeRecord {
  std::string src;
  std::string dst;
  double weight = 1.0;
};

// One stored edge. For undirected graphs edges() reports each edge once with u <= v.
struct Edge {
  NodeId u;
  NodeId v;
  double weight;
};

// Out-neighbor segment of one node: ids sorted ascending, weights aligned.
struct NeighborView {
  std::span<const NodeId> ids;
  std::span<const double> weights;

  std::size_t size() const { return ids.size(); }
  bool empty() const { return ids.empty(); }
};

// Immutable weighted graph in CSR form.
//
// Undirected graphs store both arc directions, except self-loops which are a
// single arc v->v. Neighbor segments are sorted and duplicate-free.
class Graph {
 public:
  Graph() = default;

  // Builds from (u, v, w) triples over nodes [0, num_nodes). Parallel edges are
  // merged by summing weights; undirected edges materialize both arcs.
  // Throws std::invalid_argument on out-of-range ids or nonpositive weights.
  static Graph from_edges(std::size_t num_nodes, std::span<const Edge> edges, bool directed,
                          std::vector<std::string> node_names = {});

  std::size_t num_nodes() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_arcs() const { return neighbors_.size(); }
  // Undirected: number of distinct edges (self-loops count once). Directed: arcs.
  std::size_t num_edges() const;
  bool directed() const { return directed_; }

  NeighborView neighbors(NodeId v) const;
  std::size_t degree(NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const;

  // Position of arc u->v in the flat neighbor arrays, if present.
  std::optional<std::size_t> arc_index(NodeId u, NodeId v) const;
  std::size_t arc_begin(NodeId v) const { return offsets_[v]; }

  std::span<const std::size_t> offsets() const { return offsets_; }
  std::span<const NodeId> flat_neighbors() const { return neighbors_; }
  std::span<const double> flat_weights() const { return weights_; }

  std::vector<Edge> edges() const;

  // Original node label; the decimal index when the graph carries no names.
  std::string name(NodeId v) const;
  bool has_names() const { return !names_.empty(); }
  std::optional<NodeId> find(std::string_view name) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.directed_ == b.directed_ && a.offsets_ == b.offsets_ &&
           a.neighbors_ == b.neighbors_ && a.weights_ == b.weights_;
  }

 private:
  void check_node(NodeId v) const;

  bool directed_ = false;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::vector<double> weights_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
};

// Reads the whitespace-separated "src dst [weight]" format. '#' lines and blank
// lines are skipped. Node ids are assigned in first-appearance order. When
// `weighted` is false a third field is rejected.
Graph parse_edge_list(std::istream& in, bool directed, bool weighted);
Graph read_edge_list(const std::filesystem::path& path, bool directed, bool weighted);

// Writes "src dst weight" lines such that parse_edge_list(.., weighted=true)
// reproduces the graph, node numbering included, for any graph that came from
// parse_edge_list.
void write_edge_list(std::ostream& out, const Graph& g);

// Component label per node over the undirected view, numbered in discovery order.
std::vector<std::uint32_t> connected_components(const Graph& g);
std::size_t count_components(const Graph& g);

// Induced subgraph on the largest component, names carried over.
Graph largest_component(const Graph& g);

// Shortest round-trip decimal text for a double.
std::string format_number(double value);
std::string format_number(float value);

}  // namespace n2v
