#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("pagraph-cli-") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) {
    const std::string cmd = std::string(PAGRAPH_CLI) + " " + args + " > " + (dir_ / "stdout").string() +
                            " 2> " + (dir_ / "stderr").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }
  static std::size_t count_lines(const std::string& text, char skip = '#') {
    std::size_t n = 0;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) n += !line.empty() && line[0] != skip;
    return n;
  }

  fs::path dir_;
};

TEST_F(Cli, GenerateBoEdgeCount) {
  ASSERT_EQ(run("generate --model bo --a 0.276 --m 12 --n 100000 --seed 7 --out " + path("bo.txt")), 0);
  EXPECT_EQ(count_lines(slurp(path("bo.txt"))), 1200000u);
  const auto manifest = nlohmann::json::parse(slurp(path("bo.txt.manifest.json")));
  EXPECT_EQ(manifest["command"], "generate");
  EXPECT_EQ(manifest["seeds"]["seed"], 7);
  EXPECT_TRUE(manifest.contains("wall_clock_seconds"));
}

TEST_F(Cli, GenerateGdsRecordsDegreeSequence) {
  ASSERT_EQ(run("generate --model gds --gamma 2.276 --n 100000 --out " + path("gds.txt")), 0);
  const std::string seq = slurp(path("gds.txt.degseq.tsv"));
  EXPECT_EQ(count_lines(seq), 100000u);
  std::uint64_t sum = 0;
  std::istringstream in(seq);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    sum += std::stoull(line.substr(line.find('\t') + 1));
  }
  EXPECT_EQ(count_lines(slurp(path("gds.txt"))), sum / 2);
}

TEST_F(Cli, GenerateHkEdgeCount) {
  ASSERT_EQ(run("generate --model hk --n 100000 --m 12 --pt 0.5 --out " + path("hk.txt")), 0);
  EXPECT_EQ(count_lines(slurp(path("hk.txt"))), 12u * (100000 - 13) + 78);
}

TEST_F(Cli, AnalyzePathGraph) {
  std::ofstream(path("path.txt")) << "0 1\n1 2\n";
  ASSERT_EQ(run("analyze --graph " + path("path.txt") + " --out " + path("p")), 0);
  EXPECT_EQ(slurp(path("p.degrees.tsv")), "# d\tcount\tcumulative\n1\t2\t1\n2\t1\t0\n");
  EXPECT_EQ(slurp(path("p.dnn.tsv")), "# d\tdnn\n1\t2\n2\t1\n");
  EXPECT_TRUE(fs::exists(path("p.edges.tsv")));
  EXPECT_TRUE(fs::exists(path("p.matrix.tsv")));
}

TEST_F(Cli, TheoryDegreesClosedForm) {
  ASSERT_EQ(run("theory degrees --a 1 --m 1 --n 3000 --d-max 3 --out " + path("t.tsv")), 0);
  std::istringstream in(slurp(path("t.tsv")));
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "#d\texpected");
  const double expected[] = {2000, 500, 200};
  for (int d = 1; d <= 3; ++d) {
    int got_d = 0;
    double value = 0;
    ASSERT_TRUE(in >> got_d >> value);
    EXPECT_EQ(got_d, d);
    EXPECT_NEAR(value, expected[d - 1], 1e-9 * expected[d - 1]);
  }
  EXPECT_FALSE(in >> header);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("generate --model bo --a -1 --n 10 --out " + path("x.txt")), 2);
  EXPECT_EQ(run("generate --model nope --n 10 --out " + path("x.txt")), 2);
  EXPECT_EQ(run("generate --n 10"), 2);
  EXPECT_EQ(run("analyze --graph " + path("missing.txt") + " --out " + path("m")), 4);
  std::ofstream(path("bad.txt")) << "0 1\nzero 2\n";
  EXPECT_EQ(run("analyze --graph " + path("bad.txt") + " --out " + path("b")), 4);
  EXPECT_NE(slurp(path("stderr")).find("line 2"), std::string::npos);
  EXPECT_EQ(run("theory degrees --a 1 --m 3 --d-max 2 --out " + path("t.tsv")), 0);
}

TEST_F(Cli, PipelineIsDeterministicAndVerifies) {
  const std::string gen = "generate --model bo --a 0.5 --m 3 --n 20000 --seed 5 --out ";
  ASSERT_EQ(run("--verify " + gen + path("g1.txt")), 0);
  ASSERT_EQ(run("--threads 1 " + gen + path("g2.txt")), 0);
  EXPECT_EQ(slurp(path("g1.txt")), slurp(path("g2.txt")));
  EXPECT_EQ(nlohmann::json::parse(slurp(path("g1.txt.manifest.json")))["verified"], true);

  ASSERT_EQ(run("analyze --graph " + path("g1.txt") + " --out " + path("a")), 0);
  const std::string fit = " fit --analysis " + path("a") + " --d1-lo 3 --d1-hi 300 --bootstrap 20 --seed 3 --out ";
  ASSERT_EQ(run("--threads 1" + fit + path("f1")), 0);
  ASSERT_EQ(run("--threads 3 --verify" + fit + path("f2")), 0);
  EXPECT_EQ(slurp(path("f1.fit.tsv")), slurp(path("f2.fit.tsv")));
  EXPECT_EQ(slurp(path("f1.fit.json")), slurp(path("f2.fit.json")));
  const auto report = nlohmann::json::parse(slurp(path("f1.fit.json")));
  EXPECT_TRUE(report["degree_fit"]["converged"].get<bool>());
  EXPECT_EQ(count_lines(slurp(path("f1.fit.tsv"))), 4u);

  ASSERT_EQ(run("bootstrap --analysis " + path("a") + " --d1-lo 3 --d1-hi 300 --target degrees --iterations 15 --seed 2 --out " +
                path("boot.tsv")),
            0);
  const std::string boot = slurp(path("boot.tsv"));
  EXPECT_EQ(count_lines(boot), 16u);
  EXPECT_NE(boot.find("\nsummary\t"), std::string::npos);
}

}  // namespace
