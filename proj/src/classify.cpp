#include "node2vec/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "node2vec/errors.hpp"
#include "node2vec/random.hpp"

namespace n2v {

std::vector<NodeId> LabeledNodes::labeled_nodes() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < labels.size(); ++v) {
    if (!labels[v].empty()) out.push_back(v);
  }
  return out;
}

LabeledNodes parse_labels(std::istream& in, const Graph& g) {
  LabeledNodes out;
  out.labels.resize(g.num_nodes());
  std::unordered_map<std::string, std::uint32_t> ids;
  std::string line, token;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    if (!(fields >> token) || token.front() == '#') continue;
    const auto node = g.find(token);
    if (!node) throw ParseError("unknown node '" + token + "' in label file", line_no);
    LabelSet& set = out.labels[*node];
    bool any = false;
    while (fields >> token) {
      auto [it, inserted] = ids.try_emplace(token, static_cast<std::uint32_t>(out.label_names.size()));
      if (inserted) out.label_names.push_back(token);
      if (std::find(set.begin(), set.end(), it->second) == set.end()) set.push_back(it->second);
      any = true;
    }
    if (!any) throw ParseError("node '" + g.name(*node) + "' has no labels", line_no);
    std::sort(set.begin(), set.end());
  }
  return out;
}

LabeledNodes read_labels(const std::filesystem::path& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return parse_labels(in, g);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.message(), e.line());
  }
}

Eigen::MatrixXd node_features(const EmbeddingMatrix& f) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(f.rows()), static_cast<Eigen::Index>(f.dims()));
  for (std::size_t v = 0; v < f.rows(); ++v) {
    const auto row = f.input_row(v);
    for (std::size_t i = 0; i < f.dims(); ++i) {
      x(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(i)) = row[i];
    }
  }
  return x;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& x, std::span<const NodeId> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = x.row(rows[i]);
  return out;
}

std::vector<LabelSet> multilabel_predict(const Eigen::MatrixXd& scores, std::span<const std::size_t> counts) {
  if (static_cast<std::size_t>(scores.rows()) != counts.size()) {
    throw std::invalid_argument("one label count per scored row required");
  }
  const auto num_labels = static_cast<std::size_t>(scores.cols());
  std::vector<LabelSet> out(counts.size());
  std::vector<std::uint32_t> order(num_labels);
  for (std::size_t r = 0; r < counts.size(); ++r) {
    std::iota(order.begin(), order.end(), 0u);
    const auto row = static_cast<Eigen::Index>(r);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return scores(row, a) > scores(row, b); });
    const std::size_t c = std::min(counts[r], num_labels);
    out[r].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(c));
    std::sort(out[r].begin(), out[r].end());
  }
  return out;
}

namespace {

struct Confusion {
  std::vector<double> tp, fp, fn;
};

Confusion confusion(std::span<const LabelSet> predicted, std::span<const LabelSet> truth, std::size_t num_labels) {
  if (predicted.size() != truth.size()) throw std::invalid_argument("prediction/truth size mismatch");
  Confusion c{std::vector<double>(num_labels, 0.0), std::vector<double>(num_labels, 0.0),
              std::vector<double>(num_labels, 0.0)};
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const LabelSet& p = predicted[i];
    const LabelSet& t = truth[i];
    for (auto l : p) {
      if (l >= num_labels) throw std::invalid_argument("label id out of range");
      (std::find(t.begin(), t.end(), l) != t.end() ? c.tp : c.fp)[l] += 1.0;
    }
    for (auto l : t) {
      if (l >= num_labels) throw std::invalid_argument("label id out of range");
      if (std::find(p.begin(), p.end(), l) == p.end()) c.fn[l] += 1.0;
    }
  }
  return c;
}

double f1(double tp, double fp, double fn) {
  const double denom = 2.0 * tp + fp + fn;
  return denom == 0.0 ? 0.0 : 2.0 * tp / denom;
}

}  // namespace

double macro_f1(std::span<const LabelSet> predicted, std::span<const LabelSet> truth, std::size_t num_labels) {
  if (num_labels == 0) return 0.0;
  const Confusion c = confusion(predicted, truth, num_labels);
  double sum = 0.0;
  for (std::size_t l = 0; l < num_labels; ++l) sum += f1(c.tp[l], c.fp[l], c.fn[l]);
  return sum / static_cast<double>(num_labels);
}

double micro_f1(std::span<const LabelSet> predicted, std::span<const LabelSet> truth, std::size_t num_labels) {
  const Confusion c = confusion(predicted, truth, num_labels);
  return f1(std::accumulate(c.tp.begin(), c.tp.end(), 0.0), std::accumulate(c.fp.begin(), c.fp.end(), 0.0),
            std::accumulate(c.fn.begin(), c.fn.end(), 0.0));
}

F1Scores evaluate_node_split(const Eigen::MatrixXd& features, const LabeledNodes& labels,
                             std::span<const NodeId> train_nodes, std::span<const NodeId> test_nodes,
                             const LogRegOptions& options) {
  std::vector<LabelSet> train_labels;
  train_labels.reserve(train_nodes.size());
  for (NodeId v : train_nodes) train_labels.push_back(labels.labels.at(v));
  const OvrClassifier clf =
      train_logreg_ovr(select_rows(features, train_nodes), train_labels, labels.num_labels(), options);

  std::vector<LabelSet> truth;
  std::vector<std::size_t> counts;
  for (NodeId v : test_nodes) {
    truth.push_back(labels.labels.at(v));
    counts.push_back(truth.back().size());
  }
  const auto predicted = multilabel_predict(clf.scores(select_rows(features, test_nodes)), counts);
  return {macro_f1(predicted, truth, labels.num_labels()), micro_f1(predicted, truth, labels.num_labels())};
}

F1Scores ClassificationReport::mean() const {
  F1Scores m;
  if (splits.empty()) return m;
  for (const auto& s : splits) {
    m.macro += s.macro;
    m.micro += s.micro;
  }
  m.macro /= static_cast<double>(splits.size());
  m.micro /= static_cast<double>(splits.size());
  return m;
}

F1Scores ClassificationReport::stddev() const {
  F1Scores sd;
  if (splits.size() < 2) return sd;
  const F1Scores m = mean();
  for (const auto& s : splits) {
    sd.macro += (s.macro - m.macro) * (s.macro - m.macro);
    sd.micro += (s.micro - m.micro) * (s.micro - m.micro);
  }
  const double denom = static_cast<double>(splits.size() - 1);
  sd.macro = std::sqrt(sd.macro / denom);
  sd.micro = std::sqrt(sd.micro / denom);
  return sd;
}

namespace {

void shuffle_nodes(std::vector<NodeId>& nodes, Rng& rng) {
  for (std::size_t i = nodes.size(); i > 1; --i) std::swap(nodes[i - 1], nodes[rng.below(i)]);
}

}  // namespace

ClassificationReport classification_experiment(const Eigen::MatrixXd& features, const LabeledNodes& labels,
                                               double train_fraction, std::uint64_t seed, std::size_t repeats,
                                               const LogRegOptions& options) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train fraction must lie in (0, 1)");
  }
  const std::vector<NodeId> labeled = labels.labeled_nodes();
  if (labeled.size() < 2) throw DataError("need at least two labeled nodes");
  ClassificationReport report;
  report.train_fraction = train_fraction;
  for (std::size_t r = 0; r < repeats; ++r) {
    std::vector<NodeId> nodes = labeled;
    Rng rng = stream_rng(seed, r);
    shuffle_nodes(nodes, rng);
    auto cut = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(nodes.size())));
    cut = std::clamp<std::size_t>(cut, 1, nodes.size() - 1);
    const std::span<const NodeId> all(nodes);
    report.splits.push_back(evaluate_node_split(features, labels, all.first(cut), all.subspan(cut), options));
  }
  return report;
}

double cross_validated_macro_f1(const Eigen::MatrixXd& features, const LabeledNodes& labels,
                                std::span<const NodeId> nodes, std::size_t folds, std::uint64_t seed,
                                const LogRegOptions& options) {
  if (folds < 2) throw std::invalid_argument("need at least two folds");
  if (nodes.size() < folds) throw DataError("fewer labeled nodes than folds");
  std::vector<NodeId> order(nodes.begin(), nodes.end());
  Rng rng(seed);
  shuffle_nodes(order, rng);
  double total = 0.0;
  for (std::size_t k = 0; k < folds; ++k) {
    const std::size_t b = order.size() * k / folds;
    const std::size_t e = order.size() * (k + 1) / folds;
    std::vector<NodeId> train;
    train.insert(train.end(), order.begin(), order.begin() + static_cast<std::ptrdiff_t>(b));
    train.insert(train.end(), order.begin() + static_cast<std::ptrdiff_t>(e), order.end());
    const std::span<const NodeId> test(order.data() + b, e - b);
    total += evaluate_node_split(features, labels, train, test, options).macro;
  }
  return total / static_cast<double>(folds);
}

}  // namespace n2v
