#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "ul/cli.hpp"
#include "ul/io.hpp"

namespace {

namespace fs = std::filesystem;
using ul::io::Json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ulab_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = ul::cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void gen_pair(std::size_t n) {
    ASSERT_EQ(run({"gen", "canonical", "--n", std::to_string(n), "--out", path("c.json")}).code, 0);
    ASSERT_EQ(run({"gen", "dft", "--n", std::to_string(n), "--out", path("d.json")}).code, 0);
  }

  fs::path dir_;
};

TEST_F(Cli, GenCanonicalIsIdentity) {
  ASSERT_EQ(run({"gen", "canonical", "--n", "4", "--p", "2", "--out", path("c.json")}).code, 0);
  const Json j = ul::io::read_json_file(path("c.json"));
  EXPECT_EQ(ul::io::basis_from_json(j), ul::canonical_basis(4, ul::Exponent(2.0)));
  EXPECT_EQ(j.at("manifest").at("command"), "gen");
  EXPECT_EQ(j.at("manifest").at("tool_version"), "0.1.0");
}

TEST_F(Cli, GenDftAtThreeIsInputError) {
  const auto r = run({"gen", "dft", "--n", "4", "--p", "3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("p = 2"), std::string::npos);
}

TEST_F(Cli, GenRejectsBadExponentAndKind) {
  EXPECT_EQ(run({"gen", "canonical", "--n", "4", "--p", "1"}).code, 2);
  EXPECT_EQ(run({"gen", "hadamard", "--n", "4"}).code, 2);
  EXPECT_EQ(run({"gen", "canonical"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"gen", "random-unitary", "--n", "4", "--p", "3"}).code, 2);
}

TEST_F(Cli, GenRandomGenpermIsDeterministic) {
  ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  ASSERT_EQ(run({"gen", "random-genperm", "--n", "6", "--p", "1.5", "--seed", "7", "--out", path("a.json")}).code, 0);
  ASSERT_EQ(run({"gen", "random-genperm", "--n", "6", "--p", "1.5", "--seed", "7", "--out", path("b.json")}).code, 0);
  ::unsetenv("SOURCE_DATE_EPOCH");
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  const auto pair = ul::io::basis_from_json(ul::io::read_json_file(path("a.json")));
  EXPECT_TRUE(ul::is_generalized_permutation(pair.synthesis()));
  EXPECT_TRUE(ul::validate(pair).valid);
}

TEST_F(Cli, GenRoundTripIsBitExact) {
  ASSERT_EQ(run({"gen", "random-unitary", "--n", "8", "--seed", "3", "--out", path("u.json")}).code, 0);
  const auto pair = ul::io::basis_from_json(ul::io::read_json_file(path("u.json")));
  EXPECT_EQ(pair, ul::random_basis(8, ul::Exponent(2.0), 3));
}

TEST_F(Cli, Validate) {
  gen_pair(4);
  EXPECT_EQ(run({"validate", path("d.json"), "--out", path("v.json")}).code, 0);
  Json d = ul::io::read_json_file(path("d.json"));
  d["p"] = 3.0;
  ul::io::write_text_file(path("bad.json"), d.dump());
  const auto r = run({"validate", path("bad.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(Json::parse(r.out).at("violated_clause"), "synthesis_isometry");
}

TEST_F(Cli, VerifyEnumerateRandom) {
  gen_pair(4);
  const auto r = run({"verify", path("c.json"), path("d.json"), "--enumerate", "--random", "100", "--out",
                      path("certs.jsonl"), "--summary", path("summary.csv")});
  EXPECT_EQ(r.code, 0) << r.err;
  std::ifstream in(path("certs.jsonl"));
  std::string line;
  std::getline(in, line);
  EXPECT_TRUE(Json::parse(line).contains("manifest"));
  std::size_t count = 0;
  bool saw_empty = false;
  while (std::getline(in, line)) {
    const Json j = Json::parse(line);
    const auto c = ul::io::certificate_from_json(j);
    EXPECT_EQ(ul::io::certificate_to_json(c).dump(), [&] {
      Json copy = j;
      copy.erase("vector_index");
      return copy.dump();
    }());
    EXPECT_GE(*c.slack, -1e-9);
    if (c.subsets.m_size() == 0 && c.subsets.n_size() == 0) {
      saw_empty = true;
      EXPECT_EQ(*c.constant, 2.0);
    }
    ++count;
  }
  EXPECT_TRUE(saw_empty);
  // size pairs with ab <= 3: C(4,a) C(4,b) summed
  const std::size_t pairs = 1 * 1 + 2 * (1 * 4) + 2 * (1 * 6) + 2 * (1 * 4) + 4 * 4 + 2 * (4 * 6) + 2 * (4 * 4);
  EXPECT_EQ(count, pairs * 100);
  const std::string csv = slurp(path("summary.csv"));
  EXPECT_EQ(csv.rfind("# manifest ", 0), 0u);
  EXPECT_NE(csv.find("variant,n,p,M_size,N_size,mu,constant,min_slack,M,N\n"), std::string::npos);
}

TEST_F(Cli, VerifySubsetsAndFormats) {
  gen_pair(4);
  auto r = run({"verify", path("c.json"), path("d.json"), "--subsets", "M=1", "N=1", "--random", "3", "--format",
                "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("fgj,4,2,1,1,0.5,3,"), std::string::npos);

  ul::io::write_text_file(path("x.json"), "[[1, 0, 0, 0]]");
  r = run({"verify", path("c.json"), path("d.json"), "--subsets", "M=1 N=1", "--file", path("x.json"), "--variant",
           "swapped-local"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  const auto c = ul::io::certificate_from_json(Json::parse(line));
  EXPECT_EQ(c.variant, ul::Variant::fgj_swapped_local);
  EXPECT_EQ(*c.constant, 3.0);

  r = run({"verify", path("c.json"), path("d.json"), "--subsets", "M=", "N=", "--random", "2"});
  EXPECT_EQ(r.code, 0);
}

TEST_F(Cli, VerifyInputErrors) {
  gen_pair(4);
  ul::io::write_text_file(path("broken.json"), "{\"n\": 4, \"p\": 2, \"field\": \"real\", \"T\": [[1, 0]");
  EXPECT_EQ(run({"verify", path("broken.json"), path("d.json"), "--enumerate", "--random", "2"}).code, 2);
  Json d = ul::io::read_json_file(path("d.json"));
  d["F"][0][0] = Json::array({5.0, 0.0});
  ul::io::write_text_file(path("corrupt.json"), d.dump());
  EXPECT_EQ(run({"verify", path("c.json"), path("corrupt.json"), "--enumerate", "--random", "2"}).code, 2);
  EXPECT_EQ(run({"verify", path("c.json"), path("d.json"), "--random", "2"}).code, 2);
  EXPECT_EQ(run({"verify", path("c.json"), path("d.json"), "--subsets", "M=9", "--random", "2"}).code, 2);
  EXPECT_EQ(run({"verify", path("c.json"), path("d.json"), "--subsets", "Q=1", "--random", "2"}).code, 2);
  EXPECT_EQ(run({"verify", path("c.json"), path("missing.json"), "--enumerate", "--random", "2"}).code, 2);
  EXPECT_EQ(run({"verify", path("c.json"), path("d.json"), "--enumerate", "--random", "2", "--variant", "x"}).code, 2);
}

TEST_F(Cli, Annihilate) {
  gen_pair(4);
  auto r = run({"annihilate", path("c.json"), path("d.json"), "--subsets", "M=1,3", "N=1,3", "--out", path("a.json")});
  EXPECT_EQ(r.code, 3);
  const Json j = ul::io::read_json_file(path("a.json"));
  const auto report = ul::io::annihilation_from_json(j);
  EXPECT_GE(report.intersection_dim, 1u);
  EXPECT_LT(report.residual_f, 1e-10);
  EXPECT_LT(report.residual_g, 1e-10);

  r = run({"annihilate", path("c.json"), path("d.json"), "--subsets", "M=1", "N=2"});
  EXPECT_EQ(r.code, 0);
  r = run({"annihilate", path("c.json"), path("d.json"), "--subsets", "M=", "N=1,2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out).at("intersection_dim"), 0);
}

TEST_F(Cli, GramOfIdenticalFilesIsIdentity) {
  gen_pair(4);
  ASSERT_EQ(run({"gram", path("d.json"), path("d.json"), "--out", path("g.json")}).code, 0);
  const auto gram = ul::io::gram_from_json(ul::io::read_json_file(path("g.json")));
  EXPECT_LT(ul::max_abs_diff(gram.g, ul::DenseMatrix::identity(4)), 1e-15);
}

TEST_F(Cli, OpnormOfIdentity) {
  gen_pair(4);
  ASSERT_EQ(run({"gram", path("c.json"), path("c.json"), "--out", path("g.json")}).code, 0);
  for (const char* p : {"1.5", "2", "3"}) {
    const auto r = run({"opnorm", path("g.json"), "--p", p});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto e = ul::io::norm_estimate_from_json(Json::parse(r.out));
    EXPECT_EQ(e.lower, 1.0);
    EXPECT_EQ(e.upper, 1.0);
  }
  ASSERT_EQ(run({"gram", path("c.json"), path("d.json"), "--out", path("cd.json")}).code, 0);
  const auto r = run({"opnorm", path("cd.json"), "--p", "3", "--subsets", "M=1,2", "N=3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto e = ul::io::norm_estimate_from_json(Json::parse(r.out));
  EXPECT_LE(e.lower, e.upper + 1e-9);
  EXPECT_EQ(run({"opnorm", path("c.json"), "--p", "0.5"}).code, 2);
}

TEST_F(Cli, SearchSingleton) {
  gen_pair(4);
  ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  const std::vector<std::string> args = {"search", path("c.json"), path("d.json"), "--subsets", "M=1", "N=1",
                                         "--restarts", "4", "--steps", "100", "--seed", "2"};
  auto a = args, b = args;
  a.insert(a.end(), {"--out", path("s1.json")});
  b.insert(b.end(), {"--out", path("s2.json")});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  ::unsetenv("SOURCE_DATE_EPOCH");
  EXPECT_EQ(slurp(path("s1.json")), slurp(path("s2.json")));
  const auto result = ul::io::extremal_from_json(ul::io::read_json_file(path("s1.json")));
  EXPECT_LT(result.ratio, 1.0);
  EXPECT_EQ(result.config.restarts, 4u);
  EXPECT_EQ(run({"search", path("c.json"), path("c.json"), "--subsets", "M=1", "N=1"}).code, 2);
}

TEST_F(Cli, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

}  // namespace
