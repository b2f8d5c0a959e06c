#include "node2vec/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "node2vec/classify.hpp"
#include "node2vec/clustering.hpp"
#include "node2vec/embed.hpp"
#include "node2vec/errors.hpp"
#include "node2vec/generators.hpp"
#include "node2vec/graph.hpp"
#include "node2vec/grid_search.hpp"
#include "node2vec/learn.hpp"
#include "node2vec/linkpred.hpp"
#include "node2vec/perturb.hpp"
#include "node2vec/random.hpp"
#include "node2vec/walker.hpp"

namespace n2v::cli {

namespace {

struct RunConfig {
  std::string input;
  std::string output;
  bool directed = false;
  bool weighted = false;
  WalkParams walk;
  TrainConfig train;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  bool lazy = false;
  std::string perturb_mode = "none";
  double perturb_fraction = 0.0;

  std::string walks_path;
  std::string embeddings_path;
  std::string labels_path;
  std::string residual_output;
  std::string clusters_csv;
  double removal_fraction = 0.5;
  std::size_t k_clusters = 6;
  bool grid_search = false;
  std::optional<double> train_fraction;
  std::size_t repeats = 10;
  std::size_t num_seeds = 1;
  std::vector<std::size_t> sizes{100, 1000, 10000, 100000};
  double degree = 10.0;
  std::size_t lazy_threshold = 1000000;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report_phase(std::ostream& err, const char* phase, double seconds) {
  err << "timing " << phase << ' ' << format_number(seconds) << "s\n";
}

TransitionMode mode_of(const RunConfig& c) { return c.lazy ? TransitionMode::Lazy : TransitionMode::Precomputed; }

TrainConfig train_config(const RunConfig& c, std::uint64_t seed) {
  TrainConfig t = c.train;
  t.seed = seed;
  t.workers = c.workers;
  return t;
}

void with_output(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(fallback);
    fallback.flush();
    return;
  }
  std::ofstream file(path);
  if (!file) throw DataError("cannot write " + path);
  fn(file);
  file.flush();
  if (!file) throw DataError("write failed for " + path);
}

Graph load_graph(const RunConfig& c, std::ostream& err) {
  Graph g = read_edge_list(c.input, c.directed, c.weighted);
  if (c.perturb_mode == "none") return g;
  const PerturbMode mode = c.perturb_mode == "remove" ? PerturbMode::RemoveMissing : PerturbMode::AddNoisy;
  PerturbResult r = perturb_graph(g, mode, c.perturb_fraction, derive_seed(c.seed, 0x7065727475ULL));
  err << "perturb " << c.perturb_mode << ' ' << r.changed << " edges" << (r.truncated ? " (truncated)" : "") << '\n';
  return std::move(r.graph);
}

WalkCorpus sample_walks(const RunConfig& c, const Graph& g, const WalkParams& walk, std::uint64_t seed,
                        std::ostream& err) {
  walk.validate();
  auto t0 = Clock::now();
  const TransitionIndex index = TransitionIndex::build(g, walk.p, walk.q, mode_of(c));
  report_phase(err, "preprocess", seconds_since(t0));
  t0 = Clock::now();
  WalkCorpus corpus = generate_walks(index, g, walk, walk_seed_for(seed), c.workers);
  report_phase(err, "walk", seconds_since(t0));
  return corpus;
}

WalkCorpus load_walks(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    return read_walks(in, g);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.message(), e.line());
  }
}

EmbeddingMatrix load_embeddings(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    return read_embeddings(in, g);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.message(), e.line());
  }
}

// Features from --embeddings, from a --walks corpus, or learned in-process.
EmbeddingMatrix embedding_for(const RunConfig& c, const Graph& g, const WalkParams& walk, std::uint64_t seed,
                              std::ostream& err) {
  if (!c.embeddings_path.empty()) return load_embeddings(c.embeddings_path, g);
  const WalkCorpus corpus = c.walks_path.empty() ? sample_walks(c, g, walk, seed, err) : load_walks(c.walks_path, g);
  const auto t0 = Clock::now();
  EmbeddingMatrix f = train(corpus, g.num_nodes(), train_config(c, seed));
  report_phase(err, "train", seconds_since(t0));
  return f;
}

std::string setting_of(const WalkParams& walk) {
  return "p=" + format_number(walk.p) + " q=" + format_number(walk.q);
}

GridSearchOptions grid_options(const RunConfig& c) {
  GridSearchOptions o;
  o.mode = mode_of(c);
  o.workers = c.workers;
  return o;
}

void require_learnable(const RunConfig& c) {
  if (c.grid_search && !c.embeddings_path.empty()) {
    throw std::invalid_argument("--grid-search needs to learn features; drop --embeddings");
  }
  if (c.grid_search && !c.walks_path.empty()) {
    throw std::invalid_argument("--grid-search needs to sample walks; drop --walks");
  }
}

int cmd_walks(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Graph g = load_graph(c, err);
  const WalkCorpus corpus = sample_walks(c, g, c.walk, c.seed, err);
  with_output(c.output, out, [&](std::ostream& o) { write_walks(o, corpus, g); });
  return kOk;
}

int cmd_embed(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Graph g = load_graph(c, err);
  const EmbeddingMatrix f = embedding_for(c, g, c.walk, c.seed, err);
  with_output(c.output, out, [&](std::ostream& o) { write_embeddings(o, f, g); });
  return kOk;
}

int cmd_linkpred(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_learnable(c);
  if (c.num_seeds > 1 && (!c.residual_output.empty() || !c.walks_path.empty() || !c.embeddings_path.empty())) {
    throw std::invalid_argument("--residual-output, --walks and --embeddings need --num-seeds 1");
  }
  const Graph g = load_graph(c, err);
  LinkPredConfig config;
  config.removal_fraction = c.removal_fraction;
  config.mode = mode_of(c);
  config.workers = c.workers;

  std::vector<std::string> lines;
  for (std::size_t s = 0; s < c.num_seeds; ++s) {
    const std::uint64_t seed = c.seed + s;
    const LinkPredDataset data = make_linkpred_split(g, c.removal_fraction, seed);
    if (data.positives.empty()) throw DataError("no removable edges; the graph is a tree");
    if (data.truncated) {
      err << "warning: only " << data.positives.size() << " edges removable without disconnecting the graph\n";
    }
    if (!c.residual_output.empty()) {
      with_output(c.residual_output, out, [&](std::ostream& o) { write_edge_list(o, data.residual); });
    }
    WalkParams walk = c.walk;
    if (c.grid_search) {
      const GridSearchResult grid = grid_search_linkpred(data, walk, train_config(c, seed), seed, grid_options(c));
      walk.p = grid.best.p;
      walk.q = grid.best.q;
      err << "grid search: p=" << walk.p << " q=" << walk.q << " cv_auc=" << grid.best.score << '\n';
    }
    const EmbeddingMatrix f = embedding_for(c, data.residual, walk, seed, err);
    const LinkPredReport report = evaluate_linkpred(data, f, config, seed);
    for (const MetricRow& row : report.rows) {
      lines.push_back(setting_of(walk) + ',' + std::to_string(seed) + ',' + row.method + ',' + format_number(row.auc));
    }
  }
  with_output(c.output, out, [&](std::ostream& o) {
    o << "setting,seed,metric,value\n";
    for (const auto& line : lines) o << line << '\n';
  });
  return kOk;
}

int cmd_classify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_learnable(c);
  const Graph g = load_graph(c, err);
  const LabeledNodes labels = read_labels(c.labels_path, g);
  std::vector<double> fractions;
  if (c.train_fraction) {
    fractions.push_back(*c.train_fraction);
  } else {
    for (int i = 1; i <= 9; ++i) fractions.push_back(i / 10.0);
  }

  std::vector<std::string> lines;
  for (std::size_t s = 0; s < c.num_seeds; ++s) {
    const std::uint64_t seed = c.seed + s;
    WalkParams walk = c.walk;
    if (c.grid_search) {
      const GridSearchResult grid =
          grid_search_classification(g, labels, walk, train_config(c, seed), seed, grid_options(c));
      walk.p = grid.best.p;
      walk.q = grid.best.q;
      err << "grid search: p=" << walk.p << " q=" << walk.q << " cv_macro_f1=" << grid.best.score << '\n';
    }
    const Eigen::MatrixXd x = node_features(embedding_for(c, g, walk, seed, err));
    for (std::size_t i = 0; i < fractions.size(); ++i) {
      const ClassificationReport report =
          classification_experiment(x, labels, fractions[i], derive_seed(seed, i), c.repeats);
      const F1Scores mean = report.mean();
      const std::string prefix = "fraction=" + format_number(fractions[i]) + ',' + std::to_string(seed) + ',';
      lines.push_back(prefix + "macro_f1," + format_number(mean.macro));
      lines.push_back(prefix + "micro_f1," + format_number(mean.micro));
    }
  }
  with_output(c.output, out, [&](std::ostream& o) {
    o << "setting,seed,metric,value\n";
    for (const auto& line : lines) o << line << '\n';
  });
  return kOk;
}

int cmd_cluster(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Graph g = load_graph(c, err);
  if (c.k_clusters > g.num_nodes()) {
    throw DataError("--k-clusters " + std::to_string(c.k_clusters) + " exceeds the " +
                    std::to_string(g.num_nodes()) + " nodes");
  }
  const EmbeddingMatrix f = embedding_for(c, g, c.walk, c.seed, err);
  const KMeansResult km = kmeans(node_features(f), c.k_clusters, derive_seed(c.seed, 0x6b6d65616e73ULL));
  if (!g.directed()) err << "modularity " << format_number(modularity(g, km.labels)) << '\n';

  with_output(c.output, out, [&](std::ostream& o) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) o << g.name(v) << ' ' << km.labels[v] << '\n';
  });
  const std::string csv = !c.clusters_csv.empty() ? c.clusters_csv : c.output.empty() ? "" : c.output + ".csv";
  if (!csv.empty()) {
    with_output(csv, out, [&](std::ostream& o) {
      o << "source,target,weight,source_cluster,target_cluster\n";
      for (const Edge& e : g.edges()) {
        o << g.name(e.u) << ',' << g.name(e.v) << ',' << format_number(e.weight) << ',' << km.labels[e.u] << ','
          << km.labels[e.v] << '\n';
      }
    });
  }
  return kOk;
}

int cmd_bench_scaling(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.sizes.empty()) throw std::invalid_argument("--sizes is empty");
  if (!(c.degree > 0.0)) throw std::invalid_argument("--degree must be positive");
  std::vector<std::string> lines;
  for (std::size_t n : c.sizes) {
    const double pairs = 0.5 * static_cast<double>(n) * (static_cast<double>(n) - 1.0);
    auto m = static_cast<std::size_t>(std::llround(static_cast<double>(n) * c.degree / 2.0));
    if (static_cast<double>(m) > pairs) {
      m = static_cast<std::size_t>(pairs);
      err << "warning: size " << n << " caps the edge count at " << m << '\n';
    }
    const Graph g = largest_component(erdos_renyi_gnm(n, m, derive_seed(c.seed, n)));
    const TransitionMode mode = (c.lazy || n > c.lazy_threshold) ? TransitionMode::Lazy : TransitionMode::Precomputed;
    PhaseTimings t;
    learn_features(g, c.walk, train_config(c, c.seed), mode, walk_seed_for(c.seed), c.workers, &t);
    const std::string size = std::to_string(n) + ',';
    lines.push_back(size + "preprocess," + format_number(t.preprocess));
    lines.push_back(size + "walk," + format_number(t.walk));
    lines.push_back(size + "train," + format_number(t.train));
    lines.push_back(size + "total," + format_number(t.total()));
    err << "size " << n << " (" << g.num_nodes() << " nodes in largest component) total "
        << format_number(t.total()) << "s\n";
  }
  with_output(c.output, out, [&](std::ostream& o) {
    o << "size,phase,seconds\n";
    for (const auto& line : lines) o << line << '\n';
  });
  return kOk;
}

void add_learning_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--dimensions", c.train.dimensions, "embedding dimensions d")->capture_default_str();
  cmd->add_option("--num-walks", c.walk.walks_per_node, "walks per node r")->capture_default_str();
  cmd->add_option("--walk-length", c.walk.walk_length, "walk length l")->capture_default_str();
  cmd->add_option("--window", c.train.window, "context size k")->capture_default_str();
  cmd->add_option("--p", c.walk.p, "return parameter")->capture_default_str();
  cmd->add_option("--q", c.walk.q, "in-out parameter")->capture_default_str();
  cmd->add_option("--epochs", c.train.epochs, "training epochs")->capture_default_str();
  cmd->add_option("--negatives", c.train.negatives, "negative samples per pair")->capture_default_str();
  cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
  cmd->add_option("--workers", c.workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_flag("--lazy-transitions", c.lazy, "compute transition weights per step instead of alias tables");
  cmd->add_option("--output", c.output, "output path (default stdout)");
}

void add_graph_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--input", c.input, "edge list")->required();
  cmd->add_flag("--directed", c.directed, "treat edges as directed");
  cmd->add_flag("--weighted", c.weighted, "read a third weight column");
  cmd->add_option("--perturb-mode", c.perturb_mode, "none | remove | add")
      ->check(CLI::IsMember({"none", "remove", "add"}))
      ->capture_default_str();
  cmd->add_option("--perturb-fraction", c.perturb_fraction, "fraction of edges removed or added")
      ->check(CLI::NonNegativeNumber);
  add_learning_options(cmd, c);
}

void add_feature_sources(CLI::App* cmd, RunConfig& c, bool embeddings) {
  cmd->add_option("--walks", c.walks_path, "reuse a walk corpus file");
  if (embeddings) cmd->add_option("--embeddings", c.embeddings_path, "reuse an embedding file");
}

int dispatch(CLI::App& app, const std::vector<CLI::App*>& cmds, const RunConfig& c, std::ostream& out,
             std::ostream& err) {
  using Handler = int (*)(const RunConfig&, std::ostream&, std::ostream&);
  static constexpr Handler handlers[] = {cmd_walks, cmd_embed,   cmd_linkpred,
                                         cmd_classify, cmd_cluster, cmd_bench_scaling};
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    if (cmds[i]->parsed()) return handlers[i](c, out, err);
  }
  err << app.help();
  return kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"node2vec feature learning and evaluation"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  auto* walks = app.add_subcommand("walks", "sample a walk corpus");
  add_graph_options(walks, c);

  auto* embed = app.add_subcommand("embed", "learn node embeddings");
  add_graph_options(embed, c);
  add_feature_sources(embed, c, false);

  auto* linkpred = app.add_subcommand("linkpred", "link prediction AUC for edge operators and heuristics");
  add_graph_options(linkpred, c);
  add_feature_sources(linkpred, c, true);
  linkpred->add_option("--removal-fraction", c.removal_fraction, "fraction of edges held out")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 0.999999));
  linkpred->add_option("--residual-output", c.residual_output, "write the residual graph");
  linkpred->add_flag("--grid-search", c.grid_search, "select p and q by cross-validation first");
  linkpred->add_option("--num-seeds", c.num_seeds, "consecutive seeds to run")->check(CLI::PositiveNumber);

  auto* classify = app.add_subcommand("classify", "multi-label node classification");
  add_graph_options(classify, c);
  add_feature_sources(classify, c, true);
  classify->add_option("--labels", c.labels_path, "label file")->required();
  classify->add_option("--train-fraction", c.train_fraction, "single labeled fraction (default sweep 0.1..0.9)")
      ->check(CLI::Range(0.0, 1.0));
  classify->add_option("--repeats", c.repeats, "random splits per fraction")->check(CLI::PositiveNumber);
  classify->add_flag("--grid-search", c.grid_search, "select p and q by cross-validation first");
  classify->add_option("--num-seeds", c.num_seeds, "consecutive seeds to run")->check(CLI::PositiveNumber);

  auto* cluster = app.add_subcommand("cluster", "k-means on node embeddings");
  add_graph_options(cluster, c);
  add_feature_sources(cluster, c, true);
  cluster->add_option("--k-clusters", c.k_clusters, "number of clusters")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cluster->add_option("--clusters-csv", c.clusters_csv, "edge CSV with cluster ids (default <output>.csv)");

  auto* bench = app.add_subcommand("bench-scaling", "time the pipeline on Erdos-Renyi graphs");
  add_learning_options(bench, c);
  bench->add_option("--sizes", c.sizes, "node counts")->delimiter(',')->capture_default_str();
  bench->add_option("--degree", c.degree, "average degree")->capture_default_str();
  bench->add_option("--lazy-threshold", c.lazy_threshold, "node count above which transitions are lazy")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return dispatch(app, {walks, embed, linkpred, classify, cluster, bench}, c, out, err);
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kDataError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kUsage;
  } catch (const std::bad_alloc&) {
    err << "out of memory; try --lazy-transitions or a smaller input\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace n2v::cli
