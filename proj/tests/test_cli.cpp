#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "node2vec/cli.hpp"
#include "node2vec/linkpred.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using n2v::testing::data_path;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = n2v::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("n2v_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::string kKarate = data_path("karate.edgelist").string();
const std::string kLesmis = data_path("lesmis.edgelist").string();

}  // namespace

TEST_F(CliTest, WalksCorpusHasOneLinePerWalk) {
  const Result r = run({"walks", "--input", kKarate, "--output", path("w.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(slurp(path("w.txt"))), 340u);
  EXPECT_NE(r.err.find("timing preprocess"), std::string::npos);
  EXPECT_NE(r.err.find("timing walk"), std::string::npos);
}

TEST_F(CliTest, WalksIndependentOfWorkers) {
  ASSERT_EQ(run({"walks", "--input", kKarate, "--seed", "3", "--workers", "1", "--output", path("a")}).code, 0);
  ASSERT_EQ(run({"walks", "--input", kKarate, "--seed", "3", "--workers", "8", "--output", path("b")}).code, 0);
  EXPECT_EQ(slurp(path("a")), slurp(path("b")));
}

TEST_F(CliTest, UsageErrors) {
  Result r = run({"walks"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--input"), std::string::npos);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"nonsense"}).code, 1);
  EXPECT_EQ(run({"walks", "--input", kKarate, "--p", "0"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, DataErrors) {
  Result r = run({"walks", "--input", path("missing.txt")});
  EXPECT_EQ(r.code, 2);
  std::ofstream(path("bad.txt")) << "a b\nc\n";
  r = run({"walks", "--input", path("bad.txt")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST_F(CliTest, EmbedLesMis) {
  const Result r = run({"embed", "--input", kLesmis, "--weighted", "--dimensions", "16", "--p", "1", "--q", "0.5",
                        "--output", path("e.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = slurp(path("e.txt"));
  EXPECT_EQ(text.substr(0, text.find('\n')), "77 16");
  EXPECT_EQ(count_lines(text), 78u);
  EXPECT_NE(r.err.find("timing train"), std::string::npos);
}

TEST_F(CliTest, EmbedFromCorpusMatchesInProcess) {
  const std::vector<std::string> common{"--input", kKarate, "--dimensions", "8", "--seed", "5", "--q", "2"};
  auto with = [&](std::vector<std::string> head, std::vector<std::string> tail) {
    head.insert(head.end(), common.begin(), common.end());
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  };
  ASSERT_EQ(run(with({"walks"}, {"--output", path("w")})).code, 0);
  ASSERT_EQ(run(with({"embed"}, {"--walks", path("w"), "--output", path("e1")})).code, 0);
  ASSERT_EQ(run(with({"embed"}, {"--output", path("e2")})).code, 0);
  EXPECT_EQ(slurp(path("e1")), slurp(path("e2")));
}

TEST_F(CliTest, LinkpredEmitsEightRowsPerSeed) {
  const Result r = run({"linkpred", "--input", kKarate, "--dimensions", "16", "--num-walks", "4", "--num-seeds",
                        "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "setting,seed,metric,value");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 16u);
  EXPECT_NE(r.out.find(",hadamard,"), std::string::npos);
  EXPECT_NE(r.out.find(",adamic_adar,"), std::string::npos);
}

// Node indices follow first appearance in the file, so walks on a re-read
// residual need not match the in-memory ones. The split itself must.
TEST_F(CliTest, LinkpredReusesResidualThroughFiles) {
  const std::vector<std::string> common{"--dimensions", "8", "--num-walks", "3", "--seed", "11"};
  auto args = [&](std::vector<std::string> a) {
    a.insert(a.end(), common.begin(), common.end());
    return a;
  };
  const Result direct = run(args({"linkpred", "--input", kKarate, "--residual-output", path("res")}));
  ASSERT_EQ(direct.code, 0) << direct.err;
  ASSERT_EQ(run(args({"walks", "--input", path("res"), "--weighted", "--output", path("w")})).code, 0);
  ASSERT_EQ(
      run(args({"embed", "--input", path("res"), "--weighted", "--walks", path("w"), "--output", path("e")})).code,
      0);
  const Result via_files = run(args({"linkpred", "--input", kKarate, "--embeddings", path("e")}));
  ASSERT_EQ(via_files.code, 0) << via_files.err;

  auto heuristic_rows = [](const std::string& csv) {
    std::vector<std::string> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
      for (const char* h : {"common_neighbors", "jaccard", "adamic_adar", "preferential_attachment"}) {
        if (line.find(std::string(",") + h + ",") != std::string::npos) rows.push_back(line);
      }
    }
    return rows;
  };
  EXPECT_EQ(heuristic_rows(direct.out).size(), 4u);
  EXPECT_EQ(heuristic_rows(direct.out), heuristic_rows(via_files.out));
  EXPECT_EQ(std::count(via_files.out.begin(), via_files.out.end(), '\n'), 9);
}

TEST_F(CliTest, ClassifySweepAndSingleFraction) {
  const std::string labels = data_path("karate.labels").string();
  Result r = run({"classify", "--input", kKarate, "--labels", labels, "--dimensions", "16", "--num-walks", "4",
                  "--repeats", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 1u + 9 * 2);
  EXPECT_NE(r.out.find("fraction=0.9,"), std::string::npos);
  r = run({"classify", "--input", kKarate, "--labels", labels, "--dimensions", "16", "--num-walks", "4",
           "--train-fraction", "0.5", "--num-seeds", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 1u + 3 * 2);
}

TEST_F(CliTest, ClassifyUnknownNodeNamesToken) {
  std::ofstream(path("labels.txt")) << "0 a\nstranger b\n";
  const Result r = run({"classify", "--input", kKarate, "--labels", path("labels.txt")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("stranger"), std::string::npos);
}

TEST_F(CliTest, ClusterWritesAssignmentsAndCsv) {
  const std::vector<std::string> args{"cluster", "--input", kLesmis, "--dimensions", "16", "--q", "0.5",
                                      "--seed", "2", "--output", path("c1")};
  ASSERT_EQ(run(args).code, 0);
  const std::string first = slurp(path("c1"));
  EXPECT_EQ(count_lines(first), 77u);
  EXPECT_EQ(count_lines(slurp(path("c1") + ".csv")), 255u);
  ASSERT_EQ(run(args).code, 0);
  EXPECT_EQ(slurp(path("c1")), first);
  const Result r = run({"cluster", "--input", kKarate, "--k-clusters", "40"});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, PerturbationFlags) {
  const Result r = run({"walks", "--input", kKarate, "--perturb-mode", "remove", "--perturb-fraction", "0.5",
                        "--num-walks", "1", "--walk-length", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("perturb remove 39 edges"), std::string::npos);
  EXPECT_EQ(run({"walks", "--input", kKarate, "--perturb-mode", "shuffle"}).code, 1);
}

TEST_F(CliTest, BenchSmokeRunIsFast) {
  const auto t0 = std::chrono::steady_clock::now();
  const Result r = run({"bench-scaling", "--sizes", "10"});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(secs, 1.0);
  EXPECT_EQ(count_lines(r.out), 1u + 4);
  EXPECT_NE(r.out.find("10,total,"), std::string::npos);
}
