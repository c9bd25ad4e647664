#pragma once

#include "wfoc/encoding.hpp"
#include "wfoc/logic.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace wfoc {

// Three-way verdict on an encoded word: kHolds (valid, formula true), kFails
// (valid, formula false), kReject (invalid encoding).
enum class Verdict : std::uint8_t { kReject, kHolds, kFails };

// Deterministic complete automaton over Σ_V whose states carry a verdict.
// F is the kHolds class, G the kFails class.
class ClassifierDfa {
 public:
  ClassifierDfa() = default;
  // next[q * |Σ_V| + a] is the successor of q on a.
  ClassifierDfa(ExtAlphabet ext, std::vector<State> next, std::vector<Verdict> verdicts, State initial);

  const ExtAlphabet& ext() const { return ext_; }
  std::size_t num_states() const { return verdicts_.size(); }
  State initial() const { return initial_; }
  State next(State q, Letter a) const { return next_[q * ext_.size() + a]; }
  Verdict verdict(State q) const { return verdicts_[q]; }
  const std::vector<Verdict>& verdicts() const { return verdicts_; }

  State run(std::span<const Letter> ext_word) const;
  Verdict classify(std::span<const Letter> ext_word) const { return verdict(run(ext_word)); }

  // Final states are F; G is exported as the extra set "G".
  Nfa to_nfa() const;

 private:
  ExtAlphabet ext_;
  std::vector<State> next_;
  std::vector<Verdict> verdicts_;
  State initial_ = 0;
};

// F = valid encodings (ε counts as valid only when V = ∅), G = ∅.
ClassifierDfa validity_dfa(const ExtAlphabet& ext);

// Throws ScopeError when free(f) is not contained in the variables of ext, or
// when a quantifier rebinds a variable of ext.
ClassifierDfa compile_fo(const Fo& f, const ExtAlphabet& ext);

// Moore refinement from the partition {F, G, reject}; states renumbered in
// BFS order from the initial state, unreachable states dropped.
ClassifierDfa minimize(const ClassifierDfa& d);

// Swaps F and G.
ClassifierDfa negate(const ClassifierDfa& d);

// Subset construction over V = ∅: F = subsets meeting the final states,
// G = the others.
ClassifierDfa determinize(const Nfa& a);

}  // namespace wfoc
