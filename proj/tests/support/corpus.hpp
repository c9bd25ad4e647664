#pragma once

#include "wfoc/analysis.hpp"
#include "wfoc/io.hpp"

#include <string>
#include <vector>

namespace wfoc::corpus {

inline std::string data_path(const std::string& file) { return std::string(WFOC_TEST_DATA) + "/" + file; }

inline WeightedAutomaton load_weighted(const std::string& file) {
  return read_automaton_file(data_path(file)).as_weighted();
}

inline Word word_of(const WeightedAutomaton& a, const std::string& text) { return a.alphabet().parse_word(text); }

inline State st(const Nfa& a, const std::string& name) { return a.state_at(name); }

// Integer weight sequence.
inline WeightSeq seq(std::initializer_list<std::int64_t> ws) {
  WeightSeq out;
  for (auto w : ws) out.emplace_back(w);
  return out;
}

inline std::size_t letter_count(const WeightedAutomaton& a, const Word& w, const std::string& letter) {
  const Letter l = a.alphabet().at(letter);
  std::size_t n = 0;
  for (Letter x : w) n += x == l;
  return n;
}

}  // namespace wfoc::corpus
