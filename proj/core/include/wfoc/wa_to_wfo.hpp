#pragma once

#include "wfoc/automaton.hpp"
#include "wfoc/logic.hpp"

#include <string>
#include <vector>

namespace wfoc {

// Transitions δ_1 ... δ_m (indices into Nfa::transitions()) crossing SCCs in
// order: p ≈ src(δ_1), dst(δ_i) ≈ src(δ_{i+1}), dst(δ_m) ≈ q.
struct SwitchingSequence {
  std::vector<std::uint32_t> transitions;
  friend bool operator==(const SwitchingSequence&, const SwitchingSequence&) = default;
};

// Shared reference to `a` for the run atoms of a translation.
RunRefPtr make_run_ref(const Nfa& a, const std::string& name = "A");

// Sentence for L(A_{p,q}): the run atom over the whole word. Refused with
// HypothesisError when A is not aperiodic.
Fo lang_sentence(const RunRefPtr& a, State p, State q);

// φ_δ(x): the unique run p -> q takes δ = (r, a, s) at x.
Fo transition_formula(const RunRefPtr& a, State p, State q, const Transition& delta, const std::string& x = "x");

// Φ_{p,q} = φ_{p,q} ? prod x. Ψ_{p,q} : zero. Requires A aperiodic and
// unambiguous from p to q (HypothesisError otherwise).
Wfo unambiguous_to_wfo(const WeightedAutomaton& a, State p, State q, const std::string& name = "A");

// Nested guards over I × F; uses neither + nor Σ. Requires A aperiodic and
// unambiguous.
Wfo unambiguous_wa_to_wfo(const WeightedAutomaton& a, const std::string& name = "A");

// All switching sequences from p to q in deterministic order. InputError when
// p ≈ q.
std::vector<SwitchingSequence> enumerate_switching(const Nfa& a, State p, State q);

// Φ_{p,δ̄,q} = Σy1 ... Σym (φ ? prod x. Ψ : zero).
Wfo switching_to_wfo(const WeightedAutomaton& a, const RunRefPtr& ref, State p, const SwitchingSequence& seq,
                     State q);

// Σ over I × F of Φ_{p,q}. Requires A aperiodic and SCC-unambiguous.
Wfo scc_unambiguous_to_wfo(const WeightedAutomaton& a, const std::string& name = "A");

}  // namespace wfoc
