#pragma once

#include "wfoc/logic.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wfoc {

// Automata visible to run atoms, by name.
using AutomatonEnv = std::map<std::string, RunRefPtr>;

// Concrete syntax (ASCII):
//   fo   ::= forall x. fo | exists x. fo | fo -> fo | fo '|' fo | fo & fo | !fo
//          | true | false | Pa(x) | x <= y | x < y | x = y | (fo)
//          | @NAME[p->q](lo..hi)          lo ∈ {^, var}, hi ∈ {$, var}
//   step ::= fo ? step : step | weight | (step)
//   wfo  ::= wfo + wfo | zero | prod x. step | sum x. wfo | fo ? wfo : term | (wfo)
// Binder bodies extend as far right as possible; '+' binds loosest; the else
// branch of a wFO conditional is a single term.
//
// Results are well scoped: rebinding a variable inside its own scope is a
// ScopeError; otherwise bound variables are renamed (x', x'', ...) until they
// are pairwise distinct and distinct from the free ones.
Fo parse_fo(std::string_view text, const AutomatonEnv& env = {});
Step parse_step(std::string_view text, const AutomatonEnv& env = {});
Wfo parse_wfo(std::string_view text, const AutomatonEnv& env = {});

// Formula file: '#' comment lines, optional headers
//   # alphabet: a b c
//   # fragment: no-sum, no-plus
// embedded automata for run atoms
//   automaton NAME {
//   ...automaton text...
//   }
// and the formula text.
struct FormulaFile {
  std::string body;
  std::optional<std::vector<std::string>> alphabet;
  bool no_sum = false;
  bool no_plus = false;
  AutomatonEnv automata;
};
FormulaFile parse_formula_file(std::string_view text);

struct WfoFile {
  FormulaFile file;
  Wfo formula;
};
// Verifies the fragment header.
WfoFile parse_wfo_file(std::string_view text);
WfoFile read_wfo_file(const std::string& path);

struct FoFile {
  FormulaFile file;
  Fo formula;
};
FoFile parse_fo_file(std::string_view text);
FoFile read_fo_file(const std::string& path);

std::string format_formula_file(const std::string& formula_text, const std::vector<RunRefPtr>& automata,
                                const std::optional<std::vector<std::string>>& alphabet = std::nullopt,
                                bool no_sum = false, bool no_plus = false);
std::string format_wfo_file(const Wfo& w, const std::optional<std::vector<std::string>>& alphabet = std::nullopt);

// Letter names mentioned by letter atoms and run-atom automata, sorted.
std::vector<std::string> mentioned_letters(const Fo& f);
std::vector<std::string> mentioned_letters(const Wfo& w);

}  // namespace wfoc
