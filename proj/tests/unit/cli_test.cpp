#include "cli.hpp"
#include "corpus.hpp"

#include "wfoc/analysis.hpp"

#include <gtest/gtest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace wfoc {
namespace {

namespace fs = std::filesystem;
using corpus::data_path;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result wfoc(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("wfoc_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    ::unsetenv("WFOC_MAXLEN");
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }

  fs::path dir_;
};

TEST_F(CliTest, ClassifyPoly4) {
  const Result r = wfoc({"classify", "--automaton", data_path("poly4.wa")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("ambiguity: polynomial (SCC-unambiguous); aperiodic: yes, index=", 0), 0u) << r.out;
}

TEST_F(CliTest, ClassifyAmb3ReportsExactDegree) {
  EXPECT_EQ(wfoc({"classify", "--automaton", data_path("amb3.wa")}).out,
            "ambiguity: finite (degree 3); aperiodic: yes, index=3\n");
}

TEST_F(CliTest, EvalFibonacci) {
  const Result r = wfoc({"eval", "--automaton", data_path("fibonacci.wa"), "--word", "aaaaa", "--semiring", "natural"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "5\n");
}

TEST_F(CliTest, EvalSemiringsAndAggregators) {
  const std::string mm = data_path("minmax.wa");
  EXPECT_EQ(wfoc({"eval", "--automaton", mm, "--word", "aabbb", "--semiring", "maxplus"}).out, "3\n");
  EXPECT_EQ(wfoc({"eval", "--automaton", mm, "--word", "aabbb", "--semiring", "minplus"}).out, "2\n");
  EXPECT_EQ(wfoc({"eval", "--automaton", data_path("amb3.wa"), "--word", "aaab"}).out,
            "1 x [2,1,4,3]\n1 x [2,1,5,3]\n1 x [2,2,3,3]\n");
  EXPECT_EQ(wfoc({"eval", "--automaton", data_path("amb3.wa"), "--word", "aaab", "--semiring", "natural"}).out, "90\n");
}

TEST_F(CliTest, EvalFormula) {
  write("c.wfo", "# alphabet: a b\nprod x. Pa(x) ? 2 : 1\n");
  EXPECT_EQ(wfoc({"eval", "--formula", path("c.wfo"), "--word", "aba"}).out, "1 x [2,1,2]\n");
  EXPECT_EQ(wfoc({"eval", "--formula", path("c.wfo"), "--word-tokens", "a b a", "--semiring", "natural"}).out, "4\n");
}

TEST_F(CliTest, RoundTripThroughFiles) {
  for (const char* file : {"poly4.wa", "unamb3.wa"}) {
    ASSERT_EQ(wfoc({"tologic", "--automaton", data_path(file), "-o", path("f.wfo")}).code, 0);
    const Result c = wfoc({"compile", "--formula", path("f.wfo"), "-o", path("rt.wa"), "--report"});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_NE(c.out.find("ambiguity:"), std::string::npos);
    const Result e = wfoc({"equiv", "--a", data_path(file), "--b", path("rt.wa"), "--maxlen", "6"});
    EXPECT_EQ(e.code, 0) << e.out;
    EXPECT_EQ(e.out, "EQUIV up to 6\n");
  }
}

TEST_F(CliTest, UnambiguousModeEmitsFragmentHeader) {
  const Result r = wfoc({"tologic", "--automaton", data_path("unamb3.wa"), "--mode", "unambiguous"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("# fragment: no-sum, no-plus"), std::string::npos) << r.out.substr(0, 200);
}

TEST_F(CliTest, RefusalsExitTwoWithWitness) {
  const Result u = wfoc({"tologic", "--automaton", data_path("amb3.wa"), "--mode", "unambiguous"});
  EXPECT_EQ(u.code, 2);
  EXPECT_NE(u.err.find("runs"), std::string::npos) << u.err;
  const Result d = wfoc({"decompose", "--automaton", data_path("amb3.wa"), "-K", "2", "-o", path("x")});
  EXPECT_EQ(d.code, 2);
  EXPECT_NE(d.err.find("'aaab'"), std::string::npos) << d.err;
}

TEST_F(CliTest, MalformedInputExitsTwo) {
  write("bad.wa", "alphabet: a\nstates: 1\ntrans: 1 z 1\n");
  EXPECT_EQ(wfoc({"classify", "--automaton", path("bad.wa")}).code, 2);
  write("bad.wfo", "prod x. (\n");
  EXPECT_EQ(wfoc({"compile", "--formula", path("bad.wfo")}).code, 2);
  EXPECT_EQ(wfoc({"classify", "--automaton", path("missing.wa")}).code, 2);
  EXPECT_EQ(wfoc({"nonsense"}).code, 2);
  EXPECT_EQ(wfoc({"eval", "--automaton", data_path("poly4.wa"), "--word", "abz"}).code, 2);
}

TEST_F(CliTest, EquivCounterexampleExitsOne) {
  write("other.wa", "alphabet: a b\nstates: 1 2 3 4\ninitial: 1\nfinal: 4\n"
                    "trans: 1 a 1 2\ntrans: 1 a 2 1\ntrans: 2 a 2 3\ntrans: 2 a 3 5\ntrans: 3 b 2 3\n"
                    "trans: 3 b 3 5\ntrans: 3 b 4 1\ntrans: 4 b 4 7\n");
  const Result r = wfoc({"equiv", "--a", data_path("poly4.wa"), "--b", path("other.wa"), "--maxlen", "6"});
  EXPECT_EQ(r.code, 1);
  // Verdict agrees with a direct double evaluation: the least differing word.
  const auto a = corpus::load_weighted("poly4.wa");
  const auto b = read_automaton_file(path("other.wa")).as_weighted();
  std::string first;
  for (const Word& w : all_words(2, 1, 6)) {
    if (abstract_semantics(a, w) != abstract_semantics(b, w)) {
      first = a.alphabet().format(w);
      break;
    }
  }
  ASSERT_FALSE(first.empty());
  EXPECT_EQ(r.out.rfind("DIFFER on '" + first + "'", 0), 0u) << r.out;
}

TEST_F(CliTest, MaxlenEnvironmentCap) {
  ::setenv("WFOC_MAXLEN", "4", 1);
  EXPECT_EQ(cli::sweep_cap(), 4u);
  const Result r = wfoc({"equiv", "--a", data_path("amb3.wa"), "--b", data_path("amb3.wa")});
  EXPECT_EQ(r.out, "EQUIV up to 4\n");
  const Result capped = wfoc({"equiv", "--a", data_path("amb3.wa"), "--b", data_path("amb3.wa"), "--maxlen", "9"});
  EXPECT_EQ(capped.out, "EQUIV up to 4\n");
  EXPECT_NE(capped.err.find("capped"), std::string::npos);
  ::unsetenv("WFOC_MAXLEN");
  EXPECT_EQ(cli::sweep_cap(), 8u);
}

TEST_F(CliTest, DecomposeWritesPartsAndReport) {
  const Result r = wfoc({"decompose", "--automaton", data_path("amb3.wa"), "-K", "3", "-o", path("amb3")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("A_>=3"), std::string::npos);
  for (int l = 1; l <= 3; ++l) {
    const auto b = read_automaton_file(path("amb3." + std::to_string(l) + ".wa")).as_weighted();
    EXPECT_TRUE(is_unambiguous(b.nfa()));
  }
  EXPECT_EQ(slurp(path("amb3.report.txt")), r.out);
}

TEST_F(CliTest, CompileFoEmitsThreeWayClassifier) {
  write("f.fo", "# alphabet: a b\nexists y. x < y & Pb(y)\n");
  const Result r = wfoc({"compile-fo", "--formula", path("f.fo"), "--vars", "x"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("accepting G:"), std::string::npos);
  const auto parsed = parse_automaton(r.out);
  EXPECT_TRUE(parsed.nfa.is_deterministic());
  EXPECT_EQ(parsed.nfa.alphabet().size(), 4u);
}

TEST_F(CliTest, OutputIsDeterministic) {
  write("f.wfo", "# alphabet: a b\nsum y. prod x. (x = y & Pa(x)) ? 3 : 1\n");
  const Result one = wfoc({"compile", "--formula", path("f.wfo")});
  const Result two = wfoc({"compile", "--formula", path("f.wfo")});
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_EQ(one.out, two.out);
  EXPECT_EQ(wfoc({"compile", "--formula", path("f.wfo"), "--format", "dot"}).out.rfind("digraph", 0), 0u);
  EXPECT_EQ(wfoc({"dot", "--automaton", data_path("poly4.wa")}).out, wfoc({"dot", "--automaton", data_path("poly4.wa")}).out);
}

TEST_F(CliTest, HelpExitsZero) {
  const Result r = wfoc({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("decompose"), std::string::npos);
}

}  // namespace
}  // namespace wfoc
