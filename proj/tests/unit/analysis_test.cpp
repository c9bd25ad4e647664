#include "corpus.hpp"
#include "oracles.hpp"

#include "wfoc/analysis.hpp"
#include "wfoc/error.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace wfoc {
namespace {

using corpus::load_weighted;
using corpus::seq;
using corpus::st;
using corpus::word_of;

const std::vector<std::string> kCorpus = {"poly4.wa",  "unamb3.wa",   "amb3.wa",  "fibonacci.wa",    "fmax.wa",
                                          "minmax.wa", "pow23.wa", "count.wa", "maxplus_pair.wa", "kirsten.wa"};

TEST(EnumerateRuns, Poly4UniqueRunOnAabab) {
  const auto a = load_weighted("poly4.wa");
  const auto runs = enumerate_runs(a.nfa(), st(a.nfa(), "1"), st(a.nfa(), "4"), word_of(a, "aabab"));
  ASSERT_EQ(runs.size(), 1u);
  EXPECT_EQ(runs[0].weights(a), seq({1, 5, 3, 5, 1}));
  EXPECT_EQ(runs[0].states(a.nfa()).size(), 6u);
}

TEST(EnumerateRuns, Poly4RejectsBa) {
  const auto a = load_weighted("poly4.wa");
  EXPECT_TRUE(enumerate_runs(a.nfa(), 0, 3, word_of(a, "ba")).empty());
}

TEST(EnumerateRuns, EmptyWordGivesEmptyRunOnlyOnDiagonal) {
  const auto a = load_weighted("poly4.wa");
  for (State p = 0; p < a.num_states(); ++p) {
    for (State q = 0; q < a.num_states(); ++q) {
      const auto runs = enumerate_runs(a.nfa(), p, q, Word{});
      EXPECT_EQ(runs.size(), p == q ? 1u : 0u);
      if (p == q) EXPECT_TRUE(runs[0].transitions.empty());
    }
  }
  EXPECT_EQ(abstract_semantics_between(a, 2, 2, Word{}), Multiset::singleton({}));
}

TEST(EnumerateRuns, UnknownStateOrLetterIsInputError) {
  const auto a = load_weighted("poly4.wa");
  EXPECT_THROW(enumerate_runs(a.nfa(), 9, 0, Word{0}), InputError);
  EXPECT_THROW(enumerate_runs(a.nfa(), 0, 0, Word{5}), InputError);
}

TEST(EnumerateRuns, AgreesWithRunCountsOnCorpus) {
  for (const auto& file : kCorpus) {
    const auto a = load_weighted(file);
    for (const Word& w : all_words(a.alphabet().size(), 0, 4)) {
      for (State p = 0; p < a.num_states(); ++p) {
        for (State q = 0; q < a.num_states(); ++q) {
          const auto runs = enumerate_runs(a.nfa(), p, q, w);
          ASSERT_EQ(runs.size(), count_runs_between(a.nfa(), p, q, w)) << file;
          EXPECT_EQ(!runs.empty(), accepts_between(a.nfa(), p, q, w)) << file;
          for (const wfoc::Run& r : runs) {
            const auto states = r.states(a.nfa());
            EXPECT_EQ(states.front(), p);
            EXPECT_EQ(states.back(), q);
            for (std::size_t i = 0; i < w.size(); ++i) EXPECT_EQ(a.nfa().transition(r.transitions[i]).letter, w[i]);
          }
        }
      }
    }
  }
}

TEST(AbstractSemantics, Poly4Aabab) {
  const auto a = load_weighted("poly4.wa");
  EXPECT_EQ(abstract_semantics(a, word_of(a, "aabab")), Multiset::singleton(seq({1, 5, 3, 5, 1})));
}

TEST(AbstractSemantics, Amb3Aaab) {
  const auto a = load_weighted("amb3.wa");
  Multiset expected;
  expected.add(seq({2, 1, 4, 3}));
  expected.add(seq({2, 2, 3, 3}));
  expected.add(seq({2, 1, 5, 3}));
  EXPECT_EQ(abstract_semantics(a, word_of(a, "aaab")), expected);
}

TEST(AbstractSemantics, FibonacciAaa) {
  const auto a = load_weighted("fibonacci.wa");
  Multiset expected;
  expected.add(seq({1, 1, 1}), 2);
  EXPECT_EQ(abstract_semantics(a, word_of(a, "aaa")), expected);
}

TEST(AbstractSemantics, EmptyWordIsInputError) {
  const auto a = load_weighted("poly4.wa");
  EXPECT_THROW(abstract_semantics(a, Word{}), InputError);
}

TEST(AbstractSemantics, MatchesExhaustiveStateSequencesOnCorpus) {
  for (const auto& file : kCorpus) {
    const auto a = load_weighted(file);
    for (const Word& w : all_words(a.alphabet().size(), 1, 4)) {
      const Multiset m = abstract_semantics(a, w);
      ASSERT_EQ(m, corpus::brute_force_semantics(a, w)) << file << " " << a.alphabet().format(w);
      EXPECT_EQ(m.cardinality(), count_accepting_runs(a.nfa(), w));
      for (const auto& entry : m.items()) EXPECT_EQ(entry.first.size(), w.size());
    }
  }
}

TEST(AbstractSemantics, Poly4ClosedForm) {
  const auto a = load_weighted("poly4.wa");
  for (std::size_t m = 2; m <= 3; ++m) {
    for (std::size_t n = 0; n <= 1; ++n) {
      for (std::size_t p = 1; p <= 2; ++p) {
        std::string w(m, 'a');
        for (std::size_t i = 0; i < n; ++i) w += "ba";
        w += std::string(p, 'b');
        EXPECT_EQ(abstract_semantics(a, word_of(a, w)), corpus::poly4_closed_form(m, n, p)) << w;
      }
    }
  }
}

TEST(Scc, Poly4HasThreeComponents) {
  const auto a = load_weighted("poly4.wa");
  const auto d = scc_decompose(a.nfa());
  ASSERT_EQ(d.num_components, 3u);
  EXPECT_TRUE(d.same(1, 2));
  EXPECT_FALSE(d.same(0, 1));
  EXPECT_FALSE(d.same(2, 3));
  EXPECT_EQ(d.members[d.component[0]], std::vector<State>{0});
  EXPECT_EQ(d.members[d.component[1]], (std::vector<State>{1, 2}));
  EXPECT_EQ(d.dag_edges.size(), 2u);
}

TEST(Scc, TrivialShapes) {
  Alphabet s({"a"});
  const auto one = scc_decompose(Nfa(s, {"1"}, {{0, 0, 0}}, {0}, {0}));
  EXPECT_EQ(one.num_components, 1u);
  const auto two = scc_decompose(Nfa(s, {"1", "2"}, {}, {0}, {1}));
  EXPECT_EQ(two.num_components, 2u);
  EXPECT_TRUE(two.dag_edges.empty());
}

TEST(Scc, ComponentsAreMutualReachabilityAndDagIsTopological) {
  for (const auto& file : kCorpus) {
    const Nfa a = load_weighted(file).nfa();
    const auto d = scc_decompose(a);
    const std::size_t n = a.num_states();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (State p = 0; p < n; ++p) reach[p][p] = true;
    for (const Transition& t : a.transitions()) reach[t.src][t.dst] = true;
    for (State k = 0; k < n; ++k) {
      for (State i = 0; i < n; ++i) {
        for (State j = 0; j < n; ++j) reach[i][j] = reach[i][j] || (reach[i][k] && reach[k][j]);
      }
    }
    for (State p = 0; p < n; ++p) {
      for (State q = 0; q < n; ++q) EXPECT_EQ(d.same(p, q), reach[p][q] && reach[q][p]) << file;
    }
    for (auto [x, y] : d.dag_edges) EXPECT_LT(x, y) << file;
  }
}

TEST(Ambiguity, SccUnambiguity) {
  EXPECT_TRUE(is_scc_unambiguous(load_weighted("poly4.wa").nfa()));
  EXPECT_FALSE(is_scc_unambiguous(load_weighted("fmax.wa").nfa()));
  EXPECT_FALSE(is_scc_unambiguous(load_weighted("fibonacci.wa").nfa()));
  Alphabet s({"a", "b"});
  EXPECT_TRUE(is_scc_unambiguous(Nfa(s, {"1", "2"}, {{0, 0, 1}, {1, 1, 0}}, {0}, {1})));
}

TEST(Ambiguity, Classification) {
  auto cls = [](const char* f) { return classify_ambiguity(load_weighted(f).nfa()); };
  EXPECT_EQ(cls("unamb3.wa").cls, AmbiguityClass::kUnambiguous);
  EXPECT_EQ(cls("amb3.wa").cls, AmbiguityClass::kFinitely);
  EXPECT_EQ(cls("poly4.wa").cls, AmbiguityClass::kPolynomially);
  EXPECT_EQ(cls("fibonacci.wa").cls, AmbiguityClass::kExponentially);
  EXPECT_EQ(cls("fmax.wa").cls, AmbiguityClass::kExponentially);
  EXPECT_EQ(cls("minmax.wa").cls, AmbiguityClass::kFinitely);
  EXPECT_EQ(cls("pow23.wa").cls, AmbiguityClass::kFinitely);
  EXPECT_EQ(cls("count.wa").cls, AmbiguityClass::kPolynomially);
  EXPECT_EQ(cls("maxplus_pair.wa").cls, AmbiguityClass::kPolynomially);
  EXPECT_EQ(cls("kirsten.wa").cls, AmbiguityClass::kPolynomially);
  for (const auto& f : kCorpus) EXPECT_TRUE(cls(f.c_str()).determined) << f;
}

TEST(Ambiguity, DegreeBounded) {
  EXPECT_EQ(ambiguity_degree_bounded(load_weighted("amb3.wa").nfa(), 6), 3u);
  EXPECT_EQ(ambiguity_degree_bounded(load_weighted("unamb3.wa").nfa(), 5), 1u);
  Alphabet s({"a"});
  EXPECT_EQ(ambiguity_degree_bounded(Nfa(s, {"1"}, {{0, 0, 0}}, {0}, {}), 5), 0u);
  EXPECT_EQ(ambiguity_degree_bounded(load_weighted("fibonacci.wa").nfa(), 10), corpus::fibonacci(10));
}

// Class and bounded degree must agree: <= 1, plateau, polynomial growth, or
// exponential growth.
TEST(Ambiguity, ClassConsistentWithBoundedDegree) {
  for (const auto& file : kCorpus) {
    const Nfa a = trim(load_weighted(file).nfa());
    std::vector<double> deg;
    for (std::size_t len = 1; len <= 9; ++len) deg.push_back(static_cast<double>(ambiguity_degree_bounded(a, len)));
    switch (classify_ambiguity(a).cls) {
      case AmbiguityClass::kUnambiguous:
        EXPECT_LE(deg.back(), 1.0) << file;
        break;
      case AmbiguityClass::kFinitely:
        EXPECT_EQ(deg[6], deg[8]) << file;
        break;
      case AmbiguityClass::kPolynomially:
        for (std::size_t i = 0; i < deg.size(); ++i) {
          const double len = static_cast<double>(i + 1);
          EXPECT_LE(deg[i], 4.0 * len * len) << file;
        }
        EXPECT_FALSE(ambiguity_witness(a) == std::nullopt) << file;
        break;
      case AmbiguityClass::kExponentially:
        EXPECT_FALSE(is_scc_unambiguous(a)) << file;
        EXPECT_GT(deg[8], 2 * deg[4]) << file;
        break;
    }
  }
}

TEST(Ambiguity, WitnessesAreGenuine) {
  for (const auto& file : kCorpus) {
    const Nfa a = load_weighted(file).nfa();
    auto check = [&](const AmbiguityWitness& w, bool accepting) {
      EXPECT_NE(w.first.transitions, w.second.transitions) << file;
      EXPECT_FALSE(w.word.empty());
      for (const wfoc::Run* r : {&w.first, &w.second}) {
        const auto states = r->states(a);
        for (std::size_t i = 0; i < w.word.size(); ++i) {
          const Transition& t = a.transition(r->transitions[i]);
          EXPECT_EQ(t.letter, w.word[i]);
          EXPECT_EQ(t.src, states[i]);
        }
        if (accepting) {
          EXPECT_TRUE(a.is_initial(states.front()));
          EXPECT_TRUE(a.is_final(states.back()));
        }
      }
      if (!accepting) {
        EXPECT_EQ(w.first.from, w.second.from);
        EXPECT_EQ(w.first.to, w.second.to);
      }
      EXPECT_FALSE(w.describe(a).empty());
    };
    if (auto w = ambiguity_witness(a)) {
      check(*w, true);
      EXPECT_GE(count_accepting_runs(a, w->word), 2u);
    } else {
      EXPECT_LE(ambiguity_degree_bounded(a, 7), 1u) << file;
    }
    if (auto w = scc_ambiguity_witness(a)) check(*w, false);
  }
}

TEST(Ambiguity, BetweenStates) {
  const Nfa a = load_weighted("poly4.wa").nfa();
  EXPECT_FALSE(is_unambiguous_between(a, 0, 3));
  EXPECT_TRUE(is_unambiguous_between(a, 1, 2));
  EXPECT_TRUE(is_unambiguous_between(a, 3, 3));
}

TEST(Aperiodicity, CorpusIndices) {
  const auto fib = aperiodicity_index(load_weighted("fibonacci.wa").nfa());
  ASSERT_TRUE(fib.has_value());
  EXPECT_LE(*fib, 2u);
  Alphabet s({"a"});
  EXPECT_FALSE(aperiodicity_index(Nfa(s, {"p", "q"}, {{0, 0, 1}, {1, 0, 0}}, {0}, {0})).has_value());
  Alphabet ab({"a", "b"});
  EXPECT_EQ(aperiodicity_index(Nfa(ab, {"p"}, {{0, 0, 0}, {0, 1, 0}}, {0}, {0})), std::optional<std::size_t>(1));
  for (const auto& f : kCorpus) EXPECT_TRUE(is_aperiodic(load_weighted(f).nfa())) << f;
}

TEST(Aperiodicity, IndexStabilizesMembershipAndIsLeast) {
  for (const auto& file : kCorpus) {
    const Nfa a = load_weighted(file).nfa();
    const auto m = aperiodicity_index(a);
    ASSERT_TRUE(m.has_value());
    bool earlier_differs = false;
    for (const Word& u : all_words(a.alphabet().size(), 1, 3)) {
      auto power = [&](std::size_t k) {
        Word w;
        for (std::size_t i = 0; i < k; ++i) w.insert(w.end(), u.begin(), u.end());
        return w;
      };
      for (State p = 0; p < a.num_states(); ++p) {
        for (State q = 0; q < a.num_states(); ++q) {
          EXPECT_EQ(accepts_between(a, p, q, power(*m)), accepts_between(a, p, q, power(*m + 1))) << file;
          if (*m > 1 && accepts_between(a, p, q, power(*m - 1)) != accepts_between(a, p, q, power(*m))) {
            earlier_differs = true;
          }
        }
      }
    }
    if (*m > 1) EXPECT_TRUE(earlier_differs) << file;
  }
}

TEST(Aperiodicity, CapRaisesLimitError) {
  EXPECT_THROW(aperiodicity_index(load_weighted("poly4.wa").nfa(), 2), LimitError);
}

TEST(Trim, RemovesUselessStatesAndPreservesSemantics) {
  Alphabet s({"a"});
  WeightedAutomaton a(s, {"1", "2", "3"}, {{{0, 0, 0}, Weight(2)}, {{2, 0, 0}, Weight(1)}}, {0}, {0});
  const auto t = trim(a);
  EXPECT_EQ(t.num_states(), 1u);
  EXPECT_EQ(t.nfa().state_name(0), "1");
  for (const auto& file : kCorpus) {
    const auto w = load_weighted(file);
    const auto tw = trim(w);
    EXPECT_EQ(format_automaton(trim(tw)), format_automaton(tw)) << file;
    for (const Word& u : all_words(w.alphabet().size(), 1, 5)) {
      ASSERT_EQ(abstract_semantics(w, u), abstract_semantics(tw, u)) << file;
    }
  }
}

TEST(Product, FullLoopsCollapse) {
  Alphabet s({"a", "b"});
  Nfa one(s, {"1"}, {{0, 0, 0}, {0, 1, 0}}, {0}, {0});
  const auto p = product(one, one);
  EXPECT_EQ(p.nfa.num_states(), 1u);
  EXPECT_EQ(p.nfa.transitions().size(), 2u);
  EXPECT_TRUE(p.nfa.is_final(0));
}

TEST(Product, IntersectsLanguagesAndKeepsAperiodicity) {
  const Nfa a = load_weighted("poly4.wa").nfa();
  const Nfa b = load_weighted("amb3.wa").nfa();
  const auto p = product(a, b);
  for (const Word& w : all_words(2, 1, 6)) {
    EXPECT_EQ(accepts(p.nfa, w), accepts(a, w) && accepts(b, w));
    EXPECT_EQ(count_accepting_runs(p.nfa, w), count_accepting_runs(a, w) * count_accepting_runs(b, w));
  }
  EXPECT_TRUE(is_aperiodic(p.nfa));
  EXPECT_TRUE(is_scc_unambiguous(p.nfa));
  const auto either = product(a, b, std::logical_or<bool>());
  EXPECT_GE(either.nfa.final().size(), p.nfa.final().size());
}

TEST(Product, AlphabetMismatch) {
  EXPECT_THROW(product(load_weighted("poly4.wa").nfa(), load_weighted("unamb3.wa").nfa()), InputError);
}

TEST(Union, SelfUnionDoublesRuns) {
  const auto a = load_weighted("unamb3.wa");
  const auto u = disjoint_union(a, a);
  EXPECT_EQ(u.num_states(), 2 * a.num_states());
  for (const Word& w : all_words(3, 1, 4)) {
    EXPECT_EQ(count_accepting_runs(u.nfa(), w), 2 * count_accepting_runs(a.nfa(), w));
    EXPECT_EQ(abstract_semantics(u, w), abstract_semantics(a, w) + abstract_semantics(a, w));
  }
  EXPECT_TRUE(is_aperiodic(u.nfa()));
  EXPECT_TRUE(is_scc_unambiguous(u.nfa()));
}

TEST(AllWords, ShortlexEnumeration) {
  const auto ws = all_words(2, 0, 2);
  ASSERT_EQ(ws.size(), 7u);
  EXPECT_TRUE(ws[0].empty());
  EXPECT_EQ(ws[3], (Word{0, 0}));
  EXPECT_EQ(ws[6], (Word{1, 1}));
  EXPECT_EQ(all_words(3, 2, 3).size(), 9u + 27u);
}

}  // namespace
}  // namespace wfoc
