#pragma once

#include "wfoc/automaton.hpp"
#include "wfoc/fo_compiler.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wfoc {

// State of A_{>=k}: the k guessed runs, ordered, and the k-1 strictness bits.
// bits[l] == 1 iff run l is strictly below run l+1 on the prefix read so far;
// bits[l] == 0 implies runs[l] == runs[l+1].
struct OrderedRunState {
  std::vector<State> runs;
  std::vector<std::uint8_t> bits;
  friend auto operator<=>(const OrderedRunState&, const OrderedRunState&) = default;
};

struct GeqAutomaton {
  Nfa nfa;                             // accessible part only
  std::vector<OrderedRunState> states;  // state -> tuple
  std::size_t k = 0;
};

// Accepts the non-empty words with at least k accepting runs; its accepting
// runs are in bijection with the strictly increasing k-tuples of accepting
// runs of `a` (order: lexicographic over state indices, initial state first).
// Several initial states are allowed: initial tuples are the non-decreasing
// k-tuples of initial states. State names are "(q1,...,qk,c1,...,ck-1)".
GeqAutomaton build_a_geq_k(const Nfa& a, std::size_t k);

// Minimal complete DFA for the complement of L(A_{>=k+1}); the verdict is
// kHolds exactly on words with at most k accepting runs.
ClassifierDfa build_a_leq_k(const Nfa& a, std::size_t k);

// A_{<=k} x A_{>=k} weighted by the l-th run (1-based): unambiguous, support is
// the words with exactly k accepting runs, value is the weight sequence of the
// l-th of them. Trimmed. Throws InputError unless 1 <= l <= k.
WeightedAutomaton build_a_k_ell(const WeightedAutomaton& a, std::size_t k, std::size_t ell);

// Shortest non-empty word with more than k accepting runs (shortlex-least
// among the shortest), or nullopt when `a` is k-ambiguous.
std::optional<Word> ambiguity_excess_witness(const Nfa& a, std::size_t k);

// Least K such that `a` is K-ambiguous (at least 1), exact; nullopt unless
// the structural finite-ambiguity test certifies finiteness.
std::optional<std::size_t> exact_ambiguity_degree(const Nfa& a);

struct DecomposeStage {
  std::string stage;
  std::size_t states = 0;
  std::size_t transitions = 0;
  std::optional<std::size_t> index;  // nullopt: periodic or over the monoid cap
  std::optional<std::size_t> bound;  // asserted index bound, if any
  bool capped = false;
};

struct DecomposeResult {
  std::size_t K = 0;
  bool auto_k = false;
  std::size_t base_index = 0;  // aperiodicity index m of the (trimmed) input
  std::vector<WeightedAutomaton> parts;  // B_1 .. B_K
  std::vector<DecomposeStage> stages;

  // Every stage with a bound has a measured index within it.
  bool bounds_hold() const;
  std::string to_string() const;
};

// B_l = A_l^l + ... + A_K^l for l = 1..K, so that sem(A) is the multiset
// union of the sem(B_l). K == 0 selects K automatically (requires a finite
// ambiguity certificate). Throws HypothesisError when `a` is not aperiodic,
// not finitely ambiguous (auto K), or has a word with more than K runs.
DecomposeResult decompose(const WeightedAutomaton& a, std::size_t K = 0);

}  // namespace wfoc
