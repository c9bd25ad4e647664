#include "corpus.hpp"
#include "oracles.hpp"

#include "wfoc/analysis.hpp"
#include "wfoc/decompose.hpp"
#include "wfoc/error.hpp"
#include "wfoc/io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <regex>

namespace wfoc {
namespace {

using corpus::load_weighted;
using corpus::seq;

const char* const kCorpus[] = {"poly4.wa", "unamb3.wa", "amb3.wa", "count.wa", "fmax.wa", "minmax.wa",
                               "maxplus_pair.wa", "pow23.wa", "kirsten.wa", "fibonacci.wa"};

// Accepting runs as state sequences, found by exhaustive search and sorted
// lexicographically by state index.
struct OracleRun {
  std::vector<State> states;
  WeightSeq weights;
};
std::vector<OracleRun> sorted_runs(const WeightedAutomaton& a, const Word& u) {
  const Nfa& n = a.nfa();
  std::vector<OracleRun> out;
  std::vector<State> s(u.size() + 1, 0);
  while (true) {
    bool ok = n.is_initial(s.front()) && n.is_final(s.back());
    WeightSeq ws;
    for (std::size_t i = 0; ok && i < u.size(); ++i) {
      const auto idx = n.find_transition(Transition{s[i], u[i], s[i + 1]});
      if (!idx) ok = false;
      else ws.push_back(a.weight(*idx));
    }
    if (ok) out.push_back({s, ws});
    std::size_t k = 0;
    while (k < s.size() && ++s[k] == n.num_states()) s[k++] = 0;
    if (k == s.size()) break;
  }
  std::sort(out.begin(), out.end(), [](const OracleRun& x, const OracleRun& y) { return x.states < y.states; });
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool in_a3_b(const Alphabet& s, const Word& u) {
  static const std::regex re("aaaa*bb*");
  return std::regex_match(s.format(u), re);
}

TEST(GeqK, Amb3ThreeRunsOnA3B2) {
  const auto a = load_weighted("amb3.wa");
  const GeqAutomaton g = build_a_geq_k(a.nfa(), 3);
  ASSERT_EQ(g.nfa.initial().size(), 1u);
  EXPECT_EQ(g.nfa.state_name(g.nfa.initial()[0]), "(1,1,1,0,0)");
  const auto runs = enumerate_accepting_runs(g.nfa, a.alphabet().parse_word("aaabb"));
  ASSERT_EQ(runs.size(), 1u);
  std::vector<std::string> names;
  for (State q : runs[0].states(g.nfa)) names.push_back(g.nfa.state_name(q));
  EXPECT_EQ(names, (std::vector<std::string>{"(1,1,1,0,0)", "(1,1,2,0,1)", "(2,3,4,1,1)", "(5,5,6,1,1)",
                                             "(6,6,6,1,1)", "(6,6,6,1,1)"}));
}

TEST(GeqK, Amb3LanguageOfThreeRuns) {
  const auto a = load_weighted("amb3.wa");
  const Nfa g = build_a_geq_k(a.nfa(), 3).nfa;
  for (const Word& u : all_words(2, 1, 8)) EXPECT_EQ(accepts(g, u), in_a3_b(a.alphabet(), u)) << a.alphabet().format(u);
}

TEST(GeqK, KOneIsTheAccessiblePart) {
  for (const char* file : kCorpus) {
    const Nfa a = load_weighted(file).nfa();
    const Nfa acc = restrict_states(a, reachable_states(a));
    const GeqAutomaton g = build_a_geq_k(acc, 1);
    ASSERT_EQ(g.nfa.num_states(), acc.num_states()) << file;
    std::vector<Transition> mapped;
    for (const Transition& t : g.nfa.transitions()) mapped.push_back({g.states[t.src].runs[0], t.letter, g.states[t.dst].runs[0]});
    std::sort(mapped.begin(), mapped.end());
    EXPECT_EQ(mapped, acc.transitions()) << file;
    for (State q = 0; q < g.nfa.num_states(); ++q) {
      EXPECT_EQ(g.nfa.is_final(q), acc.is_final(g.states[q].runs[0]));
      EXPECT_EQ(g.nfa.is_initial(q), acc.is_initial(g.states[q].runs[0]));
    }
  }
}

TEST(GeqK, BitsEncodePrefixOrder) {
  // Along every run of A_>=3, bit l is 0 iff projections l and l+1 agree so far.
  const auto a = load_weighted("amb3.wa");
  const GeqAutomaton g = build_a_geq_k(a.nfa(), 3);
  for (const Word& u : all_words(2, 1, 6)) {
    for (State q0 : g.nfa.initial()) {
      for (State q1 = 0; q1 < g.nfa.num_states(); ++q1) {
        for (const wfoc::Run& r : enumerate_runs(g.nfa, q0, q1, u)) {
          const auto path = r.states(g.nfa);
          for (std::size_t j = 0; j < path.size(); ++j) {
            for (std::size_t l = 0; l < 2; ++l) {
              bool equal = true, less = false;
              for (std::size_t i = 0; i <= j && equal; ++i) {
                const State x = g.states[path[i]].runs[l], y = g.states[path[i]].runs[l + 1];
                if (x != y) {
                  equal = false;
                  less = x < y;
                }
              }
              EXPECT_EQ(g.states[path[j]].bits[l] == 0, equal);
              if (!equal) EXPECT_TRUE(less);
            }
          }
        }
      }
    }
  }
}

TEST(GeqK, AcceptingRunsAreBinomialInTheRunCount) {
  for (const char* file : kCorpus) {
    const auto a = load_weighted(file);
    for (std::size_t k = 1; k <= 3; ++k) {
      const Nfa g = build_a_geq_k(a.nfa(), k).nfa;
      for (const Word& u : all_words(a.alphabet().size(), 1, 7)) {
        ASSERT_EQ(count_accepting_runs(g, u), binomial(count_accepting_runs(a.nfa(), u), k))
            << file << " k=" << k << " " << a.alphabet().format(u);
      }
    }
  }
}

TEST(GeqK, IndexBound) {
  for (const char* file : kCorpus) {
    const Nfa a = load_weighted(file).nfa();
    const auto m = aperiodicity_index(a);
    if (!m) continue;
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto idx = aperiodicity_index(build_a_geq_k(a, k).nfa);
      ASSERT_TRUE(idx.has_value()) << file;
      EXPECT_LE(*idx, k * (*m + 1)) << file << " k=" << k;
    }
  }
}

TEST(GeqK, MultipleInitialStatesCountRunsFromEach) {
  const auto a = load_weighted("unamb3.wa");
  ASSERT_GT(a.nfa().initial().size(), 1u);
  const Nfa g = build_a_geq_k(a.nfa(), 2).nfa;
  for (const Word& u : all_words(3, 1, 6)) EXPECT_EQ(count_accepting_runs(g, u), binomial(count_accepting_runs(a.nfa(), u), 2));
  EXPECT_THROW(build_a_geq_k(a.nfa(), 0), InputError);
}

TEST(LeqK, UnambiguousAcceptsEverything) {
  const auto a = load_weighted("unamb3.wa");
  const ClassifierDfa d = build_a_leq_k(a.nfa(), 1);
  EXPECT_EQ(d.num_states(), 1u);
  for (const Word& u : all_words(3, 1, 5)) EXPECT_EQ(d.classify(u), Verdict::kHolds);
}

TEST(LeqK, Amb3) {
  const auto a = load_weighted("amb3.wa");
  const ClassifierDfa three = build_a_leq_k(a.nfa(), 3);
  const ClassifierDfa two = build_a_leq_k(a.nfa(), 2);
  for (const Word& u : all_words(2, 1, 8)) {
    EXPECT_EQ(three.classify(u), Verdict::kHolds);
    EXPECT_EQ(two.classify(u), in_a3_b(a.alphabet(), u) ? Verdict::kFails : Verdict::kHolds);
  }
  EXPECT_TRUE(is_aperiodic(two.to_nfa()));
  EXPECT_TRUE(two.to_nfa().is_deterministic());
  EXPECT_TRUE(two.to_nfa().is_complete());
}

TEST(AKEll, Amb3RunsOnAaabInOrder) {
  // Runs on aaab by state sequence: 11256 < 11356 < 12466.
  const auto a = load_weighted("amb3.wa");
  const Word aaab = a.alphabet().parse_word("aaab");
  EXPECT_EQ(abstract_semantics(build_a_k_ell(a, 3, 1), aaab), Multiset::singleton(seq({2, 2, 3, 3})));
  EXPECT_EQ(abstract_semantics(build_a_k_ell(a, 3, 2), aaab), Multiset::singleton(seq({2, 1, 5, 3})));
  EXPECT_EQ(abstract_semantics(build_a_k_ell(a, 3, 3), aaab), Multiset::singleton(seq({2, 1, 4, 3})));
  const WeightedAutomaton m = build_a_k_ell(a, 3, 2);
  EXPECT_TRUE(abstract_semantics(m, a.alphabet().parse_word("aab")).empty());
  EXPECT_THROW(build_a_k_ell(a, 3, 0), InputError);
  EXPECT_THROW(build_a_k_ell(a, 3, 4), InputError);
}

TEST(AKEll, MatchesSortedRunOracleOnCorpus) {
  for (const char* file : kCorpus) {
    const auto a = load_weighted(file);
    for (std::size_t k = 1; k <= 3; ++k) {
      for (std::size_t ell = 1; ell <= k; ++ell) {
        const WeightedAutomaton m = build_a_k_ell(a, k, ell);
        EXPECT_TRUE(is_unambiguous(m.nfa())) << file;
        if (is_aperiodic(a.nfa())) EXPECT_TRUE(is_aperiodic(m.nfa())) << file;
        for (const Word& u : all_words(a.alphabet().size(), 1, 6)) {
          const auto runs = sorted_runs(a, u);
          const Multiset expected = runs.size() == k ? Multiset::singleton(runs[ell - 1].weights) : Multiset();
          ASSERT_EQ(abstract_semantics(m, u), expected) << file << " k=" << k << " l=" << ell << " " << a.alphabet().format(u);
        }
      }
    }
  }
}

TEST(AKEll, SupportsDisjointAcrossK) {
  const auto a = load_weighted("amb3.wa");
  for (std::size_t ell = 1; ell <= 3; ++ell) {
    std::vector<Nfa> parts;
    for (std::size_t k = ell; k <= 3; ++k) parts.push_back(build_a_k_ell(a, k, ell).nfa());
    for (const Word& u : all_words(2, 1, 7)) {
      int hits = 0;
      for (const Nfa& p : parts) hits += accepts(p, u);
      EXPECT_LE(hits, 1);
    }
  }
}

TEST(ExcessWitness, ShortestWordWithTooManyRuns) {
  const auto a = load_weighted("amb3.wa");
  EXPECT_FALSE(ambiguity_excess_witness(a.nfa(), 3).has_value());
  const auto w2 = ambiguity_excess_witness(a.nfa(), 2);
  ASSERT_TRUE(w2.has_value());
  EXPECT_EQ(a.alphabet().format(*w2), "aaab");
  const auto w1 = ambiguity_excess_witness(a.nfa(), 1);
  ASSERT_TRUE(w1.has_value());
  EXPECT_EQ(a.alphabet().format(*w1), "aab");
}

Multiset union_of(const std::vector<WeightedAutomaton>& parts, const Word& u) {
  Multiset m;
  for (const auto& b : parts) m += abstract_semantics(b, u);
  return m;
}

TEST(Decompose, Amb3) {
  const auto a = load_weighted("amb3.wa");
  const DecomposeResult r = decompose(a, 3);
  ASSERT_EQ(r.parts.size(), 3u);
  EXPECT_TRUE(r.bounds_hold()) << r.to_string();
  for (const auto& b : r.parts) {
    EXPECT_TRUE(is_unambiguous(b.nfa()));
    EXPECT_TRUE(is_aperiodic(b.nfa()));
  }
  for (const Word& u : all_words(2, 1, 8)) EXPECT_EQ(union_of(r.parts, u), abstract_semantics(a, u));
}

TEST(Decompose, AutoKAndRefusals) {
  const auto amb3 = load_weighted("amb3.wa");
  const DecomposeResult r = decompose(amb3);
  EXPECT_TRUE(r.auto_k);
  EXPECT_EQ(r.K, 3u);
  try {
    decompose(amb3, 2);
    FAIL();
  } catch (const HypothesisError& e) {
    EXPECT_NE(e.witness().find("'aaab'"), std::string::npos) << e.what();
  }
  EXPECT_THROW(decompose(load_weighted("poly4.wa")), HypothesisError);  // polynomially ambiguous
  const WeightedAutomaton parity =
      parse_automaton("alphabet: a\nstates: 1 2\ninitial: 1\nfinal: 1\ntrans: 1 a 2 1\ntrans: 2 a 1 1\n").as_weighted();
  EXPECT_THROW(decompose(parity, 1), HypothesisError);
}

TEST(Decompose, UnambiguousIsItsOwnDecomposition) {
  const auto a = load_weighted("unamb3.wa");
  const DecomposeResult r = decompose(a, 1);
  ASSERT_EQ(r.parts.size(), 1u);
  for (const Word& u : all_words(3, 1, 6)) EXPECT_EQ(abstract_semantics(r.parts[0], u), abstract_semantics(a, u));
}

TEST(Decompose, FinitelyAmbiguousCorpus) {
  for (const char* file : kCorpus) {
    const auto a = load_weighted(file);
    if (!is_aperiodic(a.nfa()) || is_finitely_ambiguous(trim(a.nfa())) != true) continue;
    const DecomposeResult r = decompose(a);
    EXPECT_TRUE(r.bounds_hold()) << file << "\n" << r.to_string();
    for (const auto& b : r.parts) EXPECT_TRUE(is_unambiguous(b.nfa())) << file;
    for (const Word& u : all_words(a.alphabet().size(), 1, 6)) {
      EXPECT_EQ(union_of(r.parts, u), abstract_semantics(a, u)) << file;
    }
  }
}

}  // namespace
}  // namespace wfoc
