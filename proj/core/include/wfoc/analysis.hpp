#pragma once

#include "wfoc/automaton.hpp"
#include "wfoc/multiset.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wfoc {

// A run as a list of transition indices. Empty means the empty run p -> p.
struct Run {
  State from = 0;
  State to = 0;
  std::vector<std::uint32_t> transitions;

  std::vector<State> states(const Nfa& a) const;  // length |transitions| + 1
  WeightSeq weights(const WeightedAutomaton& a) const;
};

std::vector<Run> enumerate_runs(const Nfa& a, State p, State q, std::span<const Letter> u);
std::vector<Run> enumerate_accepting_runs(const Nfa& a, std::span<const Letter> u);

// Multiset of weight sequences of runs p -> q on u. u = ε yields {[]} iff p = q.
Multiset abstract_semantics_between(const WeightedAutomaton& a, State p, State q, std::span<const Letter> u);
// Rejects ε.
Multiset abstract_semantics(const WeightedAutomaton& a, std::span<const Letter> u);

std::uint64_t count_runs_between(const Nfa& a, State p, State q, std::span<const Letter> u);
std::uint64_t count_accepting_runs(const Nfa& a, std::span<const Letter> u);
bool accepts_between(const Nfa& a, State p, State q, std::span<const Letter> u);  // ε ∈ L(A_{p,p})
bool accepts(const Nfa& a, std::span<const Letter> u);

struct SccDecomposition {
  // Components are numbered in topological order: every DAG edge goes from a
  // smaller id to a larger one.
  std::vector<std::uint32_t> component;
  std::size_t num_components = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> dag_edges;  // sorted, unique
  std::vector<std::vector<State>> members;                        // sorted

  bool same(State p, State q) const { return component[p] == component[q]; }
};

SccDecomposition scc_decompose(const Nfa& a);

// Two distinct runs with the same label and endpoints.
struct AmbiguityWitness {
  Word word;
  Run first;
  Run second;

  std::string describe(const Nfa& a) const;
};

std::optional<AmbiguityWitness> ambiguity_witness(const Nfa& a);
std::optional<AmbiguityWitness> ambiguity_witness_between(const Nfa& a, State p, State q);
std::optional<AmbiguityWitness> scc_ambiguity_witness(const Nfa& a);
bool is_unambiguous(const Nfa& a);
bool is_unambiguous_between(const Nfa& a, State p, State q);
bool is_scc_unambiguous(const Nfa& a);

enum class AmbiguityClass { kUnambiguous, kFinitely, kPolynomially, kExponentially };

struct AmbiguityReport {
  AmbiguityClass cls = AmbiguityClass::kUnambiguous;
  // False when the finite-vs-polynomial test exceeded its size cap; cls is
  // then kPolynomially as an upper bound.
  bool determined = true;
};

std::string to_string(AmbiguityClass c);
// Expects a trimmed automaton; trims a copy otherwise.
AmbiguityReport classify_ambiguity(const Nfa& a);
// Finite ambiguity test alone: no p != q and u with p -u-> p, p -u-> q, q -u-> q.
std::optional<bool> is_finitely_ambiguous(const Nfa& a, std::size_t max_triples = 4'000'000);
std::uint64_t ambiguity_degree_bounded(const Nfa& a, std::size_t max_length);

// Least m >= 1 with e^m = e^(m+1) for every element e of the transition
// semigroup; nullopt when some element is periodic. Throws LimitError once the
// semigroup exceeds max_elements.
std::optional<std::size_t> aperiodicity_index(const Nfa& a, std::size_t max_elements = 200'000);
bool is_aperiodic(const Nfa& a);

std::vector<bool> reachable_states(const Nfa& a);
std::vector<bool> coreachable_states(const Nfa& a);
// Renumbered restriction of a to keep[q], preserving relative state order.
Nfa restrict_states(const Nfa& a, const std::vector<bool>& keep);
WeightedAutomaton restrict_states(const WeightedAutomaton& a, const std::vector<bool>& keep);
Nfa trim(const Nfa& a);
WeightedAutomaton trim(const WeightedAutomaton& a);
bool is_trim(const Nfa& a);

// Synchronous product restricted to pairs reachable from I_a x I_b. The pair
// (p,q) is final iff accept(final_a(p), final_b(q)).
struct ProductAutomaton {
  Nfa nfa;
  std::vector<std::pair<State, State>> pairs;  // state -> (p,q)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> origin;  // transition -> (index in a, index in b)
};
using AcceptRule = std::function<bool(bool, bool)>;
ProductAutomaton product(const Nfa& a, const Nfa& b, const AcceptRule& accept = std::logical_and<bool>());

// Weighted product; the weight of each product transition is chosen by pick.
using WeightRule = std::function<Weight(const Weight&, const Weight&)>;
WeightedAutomaton product(const WeightedAutomaton& a, const WeightedAutomaton& b, const WeightRule& pick,
                          const AcceptRule& accept = std::logical_and<bool>());

// States of b are shifted by |Q_a|; I and F are unions.
Nfa disjoint_union(const Nfa& a, const Nfa& b);
WeightedAutomaton disjoint_union(const WeightedAutomaton& a, const WeightedAutomaton& b);

// All words over the alphabet of length in [min_length, max_length], shortlex.
std::vector<Word> all_words(std::size_t alphabet_size, std::size_t min_length, std::size_t max_length);

}  // namespace wfoc
