#pragma once

#include "wfoc/encoding.hpp"
#include "wfoc/logic.hpp"
#include "wfoc/multiset.hpp"

#include <span>

namespace wfoc {

// Direct semantics. Letters of u are indices into `alphabet`; formula letters
// and run-atom automata are matched by letter name. Unbound variables raise
// InputError. On ε only sentences are defined.
bool eval_fo(const Fo& f, const Alphabet& alphabet, std::span<const Letter> u, const Valuation& sigma = {});

// u must be non-empty.
Weight eval_step(const Step& s, const Alphabet& alphabet, std::span<const Letter> u, const Valuation& sigma);
Multiset eval_wfo(const Wfo& w, const Alphabet& alphabet, std::span<const Letter> u, const Valuation& sigma = {});

// Semantics indexed by the variable set of `ext`: ∅ on invalid encodings and
// when free(w) is not contained in the variable set.
Multiset eval_wfo(const Wfo& w, const ExtAlphabet& ext, std::span<const Letter> ext_word);

// Run atom on u: membership of the factor strictly between the bounds.
bool eval_run_atom(const FoNode& atom, const Alphabet& alphabet, std::span<const Letter> u, const Valuation& sigma);

// Relativization of a sentence to the prefix before x, the factor strictly
// between x and y, or the suffix after x. x and y must not occur in f.
Fo relativize_before(const Fo& f, const std::string& x);
Fo relativize_between(const Fo& f, const std::string& x, const std::string& y);
Fo relativize_after(const Fo& f, const std::string& x);

}  // namespace wfoc
