#include "node2vec/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "node2vec/errors.hpp"

namespace n2v {

Graph Graph::from_edges(std::size_t num_nodes, std::span<const Edge> edges, bool directed,
                        std::vector<std::string> node_names) {
  if (!node_names.empty() && node_names.size() != num_nodes) {
    throw std::invalid_argument("node_names size does not match num_nodes");
  }
  std::vector<Edge> arcs;
  arcs.reserve(directed ? edges.size() : 2 * edges.size());
  for (const Edge& e : edges) {
    if (e.u >= num_nodes || e.v >= num_nodes) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("edge weight must be positive and finite");
    }
    arcs.push_back(e);
    if (!directed && e.u != e.v) arcs.push_back({e.v, e.u, e.weight});
  }
  std::stable_sort(arcs.begin(), arcs.end(),
                   [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });

  Graph g;
  g.directed_ = directed;
  g.offsets_.assign(num_nodes + 1, 0);
  g.neighbors_.reserve(arcs.size());
  g.weights_.reserve(arcs.size());
  for (std::size_t i = 0; i < arcs.size();) {
    const Edge& first = arcs[i];
    double w = 0.0;
    std::size_t j = i;
    for (; j < arcs.size() && arcs[j].u == first.u && arcs[j].v == first.v; ++j) w += arcs[j].weight;
    g.neighbors_.push_back(first.v);
    g.weights_.push_back(w);
    ++g.offsets_[first.u + 1];
    i = j;
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());

  g.names_ = std::move(node_names);
  g.index_.reserve(g.names_.size());
  for (std::size_t v = 0; v < g.names_.size(); ++v) {
    g.index_.emplace(g.names_[v], static_cast<NodeId>(v));
  }
  return g;
}

std::size_t Graph::num_edges() const {
  if (directed_) return num_arcs();
  std::size_t loops = 0;
  for (std::size_t v = 0; v < num_nodes(); ++v) {
    if (has_edge(static_cast<NodeId>(v), static_cast<NodeId>(v))) ++loops;
  }
  return (num_arcs() - loops) / 2 + loops;
}

void Graph::check_node(NodeId v) const {
  if (v >= num_nodes()) {
    throw std::out_of_range("node id " + std::to_string(v) + " out of range");
  }
}

NeighborView Graph::neighbors(NodeId v) const {
  check_node(v);
  const std::size_t b = offsets_[v];
  const std::size_t n = offsets_[v + 1] - b;
  return {std::span<const NodeId>(neighbors_).subspan(b, n),
          std::span<const double>(weights_).subspan(b, n)};
}

std::size_t Graph::degree(NodeId v) const {
  check_node(v);
  return offsets_[v + 1] - offsets_[v];
}

std::optional<std::size_t> Graph::arc_index(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  const auto first = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]);
  const auto last = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[u + 1]);
  const auto it = std::lower_bound(first, last, v);
  if (it == last || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - neighbors_.begin());
}

bool Graph::has_edge(NodeId u, NodeId v) const { return arc_index(u, v).has_value(); }

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(directed_ ? num_arcs() : num_arcs() / 2 + 1);
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (std::size_t a = offsets_[u]; a < offsets_[u + 1]; ++a) {
      if (directed_ || u <= neighbors_[a]) out.push_back({u, neighbors_[a], weights_[a]});
    }
  }
  return out;
}

std::string Graph::name(NodeId v) const {
  check_node(v);
  return names_.empty() ? std::to_string(v) : names_[v];
}

std::optional<NodeId> Graph::find(std::string_view name) const {
  if (names_.empty()) {
    NodeId v = 0;
    const auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), v);
    if (ec != std::errc{} || ptr != name.data() + name.size() || v >= num_nodes()) return std::nullopt;
    return v;
  }
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

}  // namespace

Graph parse_edge_list(std::istream& in, bool directed, bool weighted) {
  std::vector<std::string> names;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<Edge> edges;
  auto intern = [&](std::string_view token) {
    auto [it, inserted] = ids.try_emplace(std::string(token), static_cast<NodeId>(names.size()));
    if (inserted) names.emplace_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError("expected 2 or 3 fields, got " + std::to_string(fields.size()), line_no);
    }
    // unweighted reads ignore a weight column
    double w = 1.0;
    if (weighted && fields.size() == 3) {
      const auto tok = fields[2];
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), w);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError("non-numeric weight '" + std::string(tok) + "'", line_no);
      }
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw ParseError("nonpositive weight '" + std::string(tok) + "'", line_no);
      }
    }
    const NodeId u = intern(fields[0]);
    const NodeId v = intern(fields[1]);
    edges.push_back({u, v, w});
  }
  if (edges.empty()) throw ParseError("empty edge list", 0);
  const std::size_t n = names.size();
  return Graph::from_edges(n, edges, directed, std::move(names));
}

Graph read_edge_list(const std::filesystem::path& path, bool directed, bool weighted) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return parse_edge_list(in, directed, weighted);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.message(), e.line());
  }
}

std::string format_number(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_number(float value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  const std::size_t n = g.num_nodes();
  auto emit = [&](NodeId u, NodeId v) {
    const auto idx = g.arc_index(u, v);
    out << g.name(u) << ' ' << g.name(v) << ' ' << format_number(g.flat_weights()[*idx]) << '\n';
  };

  std::vector<std::vector<NodeId>> in_neighbors;
  if (g.directed()) {
    in_neighbors.resize(n);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v : g.neighbors(u).ids) in_neighbors[v].push_back(u);
    }
  }

  // Lines are ordered so that nodes first appear in index order: node k is
  // introduced by a line to an already seen node, by its self-loop, or jointly
  // with k+1 through the line "k k+1" when it has no earlier partner.
  NodeId paired = static_cast<NodeId>(-1);  // node whose line to its predecessor is already out
  for (NodeId k = 0; k < n; ++k) {
    std::vector<std::pair<NodeId, NodeId>> lines;
    for (NodeId other : g.neighbors(k).ids) {
      if (other >= k) break;
      if (!g.directed() && paired == k && other == k - 1) continue;
      lines.emplace_back(k, other);
    }
    if (g.directed()) {
      for (NodeId other : in_neighbors[k]) {
        if (other >= k) break;
        if (paired == k && other == k - 1) continue;
        lines.emplace_back(other, k);
      }
    }
    const bool introduced = !lines.empty() || paired == k || g.has_edge(k, k);
    if (!introduced && k + 1 < n && g.has_edge(k, k + 1)) {
      emit(k, k + 1);
      paired = k + 1;
    }
    for (const auto& [u, v] : lines) emit(u, v);
    if (g.has_edge(k, k)) emit(k, k);
  }
}

std::vector<std::uint32_t> connected_components(const Graph& g) {
  const std::size_t n = g.num_nodes();
  // union-find handles directed arcs without building a reverse index
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto root = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u).ids) {
      const auto ru = root(u);
      const auto rv = root(v);
      if (ru != rv) parent[std::max(ru, rv)] = std::min(ru, rv);
    }
  }
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> label_of_root(n, kUnset);
  std::vector<std::uint32_t> labels(n);
  std::uint32_t next = 0;
  for (NodeId v = 0; v < n; ++v) {
    const auto r = root(v);
    if (label_of_root[r] == kUnset) label_of_root[r] = next++;
    labels[v] = label_of_root[r];
  }
  return labels;
}

std::size_t count_components(const Graph& g) {
  const auto labels = connected_components(g);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

Graph largest_component(const Graph& g) {
  const auto labels = connected_components(g);
  if (labels.empty()) return g;
  std::vector<std::size_t> sizes(*std::max_element(labels.begin(), labels.end()) + 1, 0);
  for (auto l : labels) ++sizes[l];
  const auto best = static_cast<std::uint32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  if (sizes[best] == g.num_nodes()) return g;

  std::vector<NodeId> remap(g.num_nodes(), static_cast<NodeId>(-1));
  std::vector<std::string> names;
  NodeId next = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (labels[v] == best) {
      remap[v] = next++;
      names.push_back(g.name(v));
    }
  }
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (labels[e.u] == best) kept.push_back({remap[e.u], remap[e.v], e.weight});
  }
  return Graph::from_edges(next, kept, g.directed(), std::move(names));
}

}  // namespace n2v
