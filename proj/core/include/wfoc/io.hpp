#pragma once

#include "wfoc/automaton.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wfoc {

// Line-oriented automaton text:
//   alphabet: a b c
//   states: 1 2 3 4
//   initial: 1
//   final: 4
//   accepting G: 2 3
//   trans: 1 a 1 2        (src letter dst [weight])
struct ParsedAutomaton {
  Nfa nfa;
  std::optional<std::vector<Weight>> weights;  // present iff every trans line had a weight

  bool weighted() const { return weights.has_value(); }
  WeightedAutomaton as_weighted() const;  // throws InputError when unweighted
};

ParsedAutomaton parse_automaton(std::string_view text);
ParsedAutomaton read_automaton_file(const std::string& path);

std::string format_automaton(const Nfa& a);
std::string format_automaton(const WeightedAutomaton& a);

// Doubled circles for final states, an arrow from an invisible node for
// initial states, edge labels "letter | weight".
std::string to_dot(const Nfa& a, const std::string& graph_name = "A");
std::string to_dot(const WeightedAutomaton& a, const std::string& graph_name = "A");

std::string read_text_file(const std::string& path);

}  // namespace wfoc
