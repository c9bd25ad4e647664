#include "corpus.hpp"
#include "oracles.hpp"

#include "wfoc/analysis.hpp"
#include "wfoc/error.hpp"
#include "wfoc/eval.hpp"
#include "wfoc/io.hpp"
#include "wfoc/parser.hpp"
#include "wfoc/wa_to_wfo.hpp"
#include "wfoc/wfo_compiler.hpp"

#include <gtest/gtest.h>

#include <functional>

namespace wfoc {
namespace {

using corpus::load_weighted;
using corpus::seq;
using corpus::st;

bool only_letter(const Alphabet& s, const Word& u, const std::string& a) {
  return std::all_of(u.begin(), u.end(), [&](Letter l) { return s.name(l) == a; });
}

TEST(LangSentence, Poly4LoopOnState1) {
  const auto a = load_weighted("poly4.wa");
  const Fo f = lang_sentence(make_run_ref(a.nfa()), st(a.nfa(), "1"), st(a.nfa(), "1"));
  EXPECT_TRUE(eval_fo(f, a.alphabet(), {}));
  for (const Word& u : all_words(2, 1, 6)) EXPECT_EQ(eval_fo(f, a.alphabet(), u), only_letter(a.alphabet(), u, "a"));
}

TEST(LangSentence, Unamb3OneToThree) {
  const auto a = load_weighted("unamb3.wa");
  const Fo f = lang_sentence(make_run_ref(a.nfa()), st(a.nfa(), "1"), st(a.nfa(), "3"));
  for (const Word& u : all_words(3, 1, 6)) {
    const std::string s = a.alphabet().format(u);
    EXPECT_EQ(eval_fo(f, a.alphabet(), u), s.back() != 'a' && s[s.find_first_not_of('a')] == 'b') << s;
  }
}

TEST(LangSentence, RefusesPeriodicAutomata) {
  const Nfa parity = parse_automaton("alphabet: a\nstates: 1 2\ninitial: 1\nfinal: 1\ntrans: 1 a 2\ntrans: 2 a 1\n").nfa;
  EXPECT_THROW(lang_sentence(make_run_ref(parity), 0, 0), HypothesisError);
}

TEST(TransitionFormula, MarksTheTransitionsOfTheUniqueRun) {
  const auto a = load_weighted("unamb3.wa");
  const Nfa& n = a.nfa();
  const RunRefPtr ref = make_run_ref(n);
  const State p = st(n, "1"), q = st(n, "3");
  for (const Word& u : all_words(3, 1, 5)) {
    const auto runs = enumerate_runs(n, p, q, u);
    ASSERT_LE(runs.size(), 1u);
    for (std::uint32_t idx = 0; idx < n.transitions().size(); ++idx) {
      const Fo f = transition_formula(ref, p, q, n.transition(idx));
      for (std::size_t i = 1; i <= u.size(); ++i) {
        const bool expected = !runs.empty() && runs[0].transitions[i - 1] == idx;
        EXPECT_EQ(eval_fo(f, n.alphabet(), u, {{"x", i}}), expected);
      }
    }
  }
  // δ = (1,a,1) on "aab": taken at positions 1 and 2 only.
  const Fo loop = transition_formula(ref, p, q, Transition{p, n.alphabet().at("a"), p});
  const Word aab = n.alphabet().parse_word("aab");
  EXPECT_TRUE(eval_fo(loop, n.alphabet(), aab, {{"x", 1}}));
  EXPECT_TRUE(eval_fo(loop, n.alphabet(), aab, {{"x", 2}}));
  EXPECT_FALSE(eval_fo(loop, n.alphabet(), aab, {{"x", 3}}));
}

TEST(UnambiguousToWfo, Unamb3PairOneThree) {
  const auto a = load_weighted("unamb3.wa");
  const State p = st(a.nfa(), "1"), q = st(a.nfa(), "3");
  const Wfo phi = unambiguous_to_wfo(a, p, q);
  EXPECT_EQ(eval_wfo(phi, a.alphabet(), a.alphabet().parse_word("ab")), Multiset::singleton(seq({2, 1})));
  for (const Word& u : all_words(3, 1, 6)) {
    EXPECT_EQ(eval_wfo(phi, a.alphabet(), u), abstract_semantics_between(a, p, q, u));
  }
}

TEST(UnambiguousToWfo, RefusesAmbiguousPairs) {
  const auto a = load_weighted("poly4.wa");
  try {
    unambiguous_to_wfo(a, st(a.nfa(), "1"), st(a.nfa(), "4"));
    FAIL();
  } catch (const HypothesisError& e) {
    EXPECT_FALSE(e.witness().empty());
  }
}

TEST(UnambiguousWaToWfo, Unamb3WholeAutomaton) {
  const auto a = load_weighted("unamb3.wa");
  const Wfo phi = unambiguous_wa_to_wfo(a);
  EXPECT_FALSE(uses_plus(phi));
  EXPECT_FALSE(uses_sum(phi));
  for (const Word& u : all_words(3, 1, 6)) EXPECT_EQ(eval_wfo(phi, a.alphabet(), u), abstract_semantics(a, u));
  EXPECT_THROW(unambiguous_wa_to_wfo(load_weighted("amb3.wa")), HypothesisError);
}

TEST(UnambiguousWaToWfo, SinglePairCollapsesToMain1Shape) {
  // Deterministic: first letter costs 2, every later letter costs 1.
  const auto a = parse_automaton(
                     "alphabet: a b\nstates: 1 2\ninitial: 1\nfinal: 2\n"
                     "trans: 1 a 2 2\ntrans: 1 b 2 2\ntrans: 2 a 2 1\ntrans: 2 b 2 1\n")
                     .as_weighted();
  ASSERT_EQ(a.nfa().initial().size() * a.nfa().final().size(), 1u);
  const Wfo phi = unambiguous_wa_to_wfo(a);
  const Wfo direct = unambiguous_to_wfo(a, a.nfa().initial()[0], a.nfa().final()[0]);
  ASSERT_EQ(phi->kind, WfoKind::kIte);
  EXPECT_EQ(phi->rhs->kind, WfoKind::kZero);
  EXPECT_EQ(to_string(phi->lhs), to_string(direct->lhs));
  EXPECT_EQ(eval_wfo(phi, a.alphabet(), a.alphabet().parse_word("bab")), Multiset::singleton(seq({2, 1, 1})));
}

// Independent count: sequences of inter-SCC transitions chained by reachability
// inside components, found by brute force over all tuples.
std::size_t brute_force_switching_count(const Nfa& n, State p, State q) {
  const SccDecomposition scc = scc_decompose(n);
  std::vector<std::uint32_t> inter;
  for (std::uint32_t i = 0; i < n.transitions().size(); ++i) {
    if (!scc.same(n.transition(i).src, n.transition(i).dst)) inter.push_back(i);
  }
  std::size_t count = 0;
  std::vector<std::uint32_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t len) {
    if (!cur.empty()) {
      bool ok = scc.same(p, n.transition(cur[0]).src) && scc.same(n.transition(cur.back()).dst, q);
      for (std::size_t i = 0; ok && i + 1 < cur.size(); ++i) {
        ok = scc.same(n.transition(cur[i]).dst, n.transition(cur[i + 1]).src);
      }
      count += ok;
    }
    if (len == scc.num_components) return;
    for (std::uint32_t t : inter) {
      cur.push_back(t);
      rec(len + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return count;
}

TEST(EnumerateSwitching, Poly4OneToFour) {
  const auto a = load_weighted("poly4.wa");
  const Nfa& n = a.nfa();
  const auto seqs = enumerate_switching(n, st(n, "1"), st(n, "4"));
  ASSERT_EQ(seqs.size(), 1u);
  ASSERT_EQ(seqs[0].transitions.size(), 2u);
  EXPECT_EQ(n.transition(seqs[0].transitions[0]), (Transition{st(n, "1"), n.alphabet().at("a"), st(n, "2")}));
  EXPECT_EQ(n.transition(seqs[0].transitions[1]), (Transition{st(n, "3"), n.alphabet().at("b"), st(n, "4")}));
  EXPECT_THROW(enumerate_switching(n, st(n, "2"), st(n, "3")), InputError);
  EXPECT_TRUE(enumerate_switching(n, st(n, "4"), st(n, "1")).empty());
}

TEST(EnumerateSwitching, CountMatchesBruteForceOnCorpus) {
  for (const char* file : {"poly4.wa", "unamb3.wa", "amb3.wa", "fmax.wa", "kirsten.wa", "count.wa"}) {
    const Nfa n = load_weighted(file).nfa();
    const SccDecomposition scc = scc_decompose(n);
    for (State p = 0; p < n.num_states(); ++p) {
      for (State q = 0; q < n.num_states(); ++q) {
        if (scc.same(p, q)) continue;
        const auto seqs = enumerate_switching(n, p, q);
        EXPECT_EQ(seqs.size(), brute_force_switching_count(n, p, q)) << file;
        for (const auto& s : seqs) EXPECT_LE(s.transitions.size(), scc.num_components - 1);
      }
    }
  }
}

TEST(SccUnambiguousToWfo, Poly4) {
  const auto a = load_weighted("poly4.wa");
  const Wfo phi = scc_unambiguous_to_wfo(a);
  EXPECT_EQ(eval_wfo(phi, a.alphabet(), a.alphabet().parse_word("aabab")), Multiset::singleton(seq({1, 5, 3, 5, 1})));
  for (const Word& u : all_words(2, 1, 6)) {
    const Multiset m = eval_wfo(phi, a.alphabet(), u);
    EXPECT_EQ(m, abstract_semantics(a, u));
    EXPECT_EQ(m.cardinality(), count_accepting_runs(a.nfa(), u));
  }
}

TEST(SccUnambiguousToWfo, ValuationsBijectWithSwitchingRuns) {
  // For poly4 (1 -> 4): satisfying valuations of φ(y1, y2) = accepting runs.
  const auto a = load_weighted("poly4.wa");
  const Nfa& n = a.nfa();
  const RunRefPtr ref = make_run_ref(n);
  const State p = st(n, "1"), q = st(n, "4");
  const auto seqs = enumerate_switching(n, p, q);
  const Wfo phi = switching_to_wfo(a, ref, p, seqs.at(0), q);
  const Fo guard = phi->lhs->lhs->cond;
  for (const Word& u : all_words(2, 1, 5)) {
    std::uint64_t sat = 0;
    for (std::size_t i = 1; i <= u.size(); ++i) {
      for (std::size_t j = 1; j <= u.size(); ++j) sat += eval_fo(guard, n.alphabet(), u, {{"y1", i}, {"y2", j}});
    }
    EXPECT_EQ(sat, count_runs_between(n, p, q, u));
  }
}

TEST(SccUnambiguousToWfo, CorpusRoundTripThroughTheCompiler) {
  for (const char* file : {"poly4.wa", "unamb3.wa", "amb3.wa", "count.wa", "minmax.wa"}) {
    const auto a = load_weighted(file);
    if (!is_aperiodic(a.nfa()) || !is_scc_unambiguous(a.nfa())) continue;
    const Wfo phi = scc_unambiguous_to_wfo(a);
    const WeightedAutomaton back = compile_wfo(phi, a.alphabet());
    for (const Word& u : all_words(a.alphabet().size(), 1, 5)) {
      EXPECT_EQ(abstract_semantics(back, u), abstract_semantics(a, u)) << file << " " << a.alphabet().format(u);
    }
  }
}

TEST(SccUnambiguousToWfo, FragmentShape) {
  const auto a = load_weighted("poly4.wa");
  const SccDecomposition scc = scc_decompose(a.nfa());
  std::function<void(const Wfo&, std::size_t)> walk = [&](const Wfo& w, std::size_t sums) {
    if (w->kind == WfoKind::kSum) ++sums;
    EXPECT_LE(sums, scc.num_components - 1);
    if (w->lhs) walk(w->lhs, sums);
    if (w->rhs) walk(w->rhs, sums);
  };
  walk(scc_unambiguous_to_wfo(a), 0);
}

TEST(SccUnambiguousToWfo, TextRoundTrip) {
  const auto a = load_weighted("poly4.wa");
  const Wfo phi = scc_unambiguous_to_wfo(a);
  const WfoFile again = parse_wfo_file(format_wfo_file(phi, a.alphabet().names()));
  for (const Word& u : all_words(2, 1, 5)) {
    EXPECT_EQ(eval_wfo(again.formula, a.alphabet(), u), eval_wfo(phi, a.alphabet(), u));
  }
}

}  // namespace
}  // namespace wfoc
