#pragma once

#include "wfoc/automaton.hpp"
#include "wfoc/encoding.hpp"
#include "wfoc/logic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wfoc {

// One construction step. index is the measured aperiodicity index (nullopt
// when periodic or when the monoid exceeded the cap, see capped); bound is the
// index bound the construction guarantees, when it has one.
struct StageReport {
  std::string stage;
  std::size_t states = 0;
  std::size_t transitions = 0;
  std::optional<std::size_t> index;
  std::optional<std::size_t> bound;
  bool capped = false;
};

struct CompileReport {
  std::vector<StageReport> stages;
  // Semigroup size cap used when measuring indices.
  std::size_t max_monoid = 200'000;

  std::string to_string() const;
  // True when every measured index respects its bound.
  bool bounds_hold() const;
};

// Unambiguous transducer Σ_V → {0,1}: on a valid encoding its unique accepting
// run outputs bit i = [(u, σ[x ↦ i]) ⊨ phi]. free(phi) ⊆ V ∪ {x}, x ∉ V.
WeightedAutomaton build_step_transducer(const Fo& phi, const std::string& x, const ExtAlphabet& ext,
                                        CompileReport* report = nullptr);

// Automaton for prod x. psi over Σ_V: product of the step transducers of the
// conditions of psi, each transition weighted by the cascade under its bits.
WeightedAutomaton compile_product(const std::string& x, const Step& psi, const ExtAlphabet& ext,
                                  CompileReport* report = nullptr);

// phi ? A1 : A2 as the product of phi's classifier with A1 ⊎ A2.
WeightedAutomaton compile_ite(const Fo& phi, const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                              const ExtAlphabet& ext, CompileReport* report = nullptr);

WeightedAutomaton compile_plus(const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                               CompileReport* report = nullptr);

// Σ_y over an automaton on Σ_{inner}; the result lives on Σ_{inner ∖ {y}}.
WeightedAutomaton compile_sum_var(const WeightedAutomaton& a, const ExtAlphabet& inner, const std::string& y,
                                  CompileReport* report = nullptr);

// Throws ScopeError when free(phi) is not contained in V.
WeightedAutomaton compile_wfo(const Wfo& phi, const ExtAlphabet& ext, CompileReport* report = nullptr);
// Sentences only (InputError otherwise).
WeightedAutomaton compile_wfo(const Wfo& phi, const Alphabet& sigma, CompileReport* report = nullptr);

// Equivalent sum of summands, each zero, prod x. psi, or phi ? Phi' : zero
// with Phi' free of + and Σ. Throws InputError when phi contains Σ.
Wfo rewrite_sum_normal_form(const Wfo& phi);
std::vector<Wfo> sum_normal_form_summands(const Wfo& phi);

}  // namespace wfoc
