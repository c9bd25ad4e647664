#pragma once

#include "wfoc/weight.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wfoc {

using State = std::uint32_t;
using Letter = std::uint32_t;
using Word = std::vector<Letter>;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Letter a) const { return names_.at(a); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Letter> find(std::string_view name) const;
  Letter at(std::string_view name) const;  // throws InputError
  bool single_char() const;

  // Concatenated single-character letters ("aab").
  Word parse_word(std::string_view text) const;
  // Whitespace-separated letter tokens ("a:01 b:10").
  Word parse_tokens(std::string_view text) const;
  // Concatenated when single_char(), space-separated otherwise; "" for ε.
  std::string format(std::span<const Letter> word) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, Letter, std::less<>> index_;
};

struct Transition {
  State src;
  Letter letter;
  State dst;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

struct Edge {
  State dst;
  std::uint32_t index;  // into Nfa::transitions()
};

// Immutable automaton over a dense state range [0, num_states). Transitions
// are sorted by (src, letter, dst) and duplicate-free; transition indices are
// therefore stable and ordered.
class Nfa {
 public:
  Nfa() = default;
  // Empty names are replaced by the decimal index + 1.
  Nfa(Alphabet alphabet, std::vector<std::string> state_names, std::vector<Transition> transitions,
      std::vector<State> initial, std::vector<State> final,
      std::map<std::string, std::vector<State>> extra_sets = {});

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return names_.size(); }
  const std::string& state_name(State q) const { return names_.at(q); }
  const std::vector<std::string>& state_names() const { return names_; }
  std::optional<State> find_state(std::string_view name) const;
  State state_at(std::string_view name) const;  // throws InputError

  const std::vector<Transition>& transitions() const { return transitions_; }
  const Transition& transition(std::uint32_t index) const { return transitions_.at(index); }
  std::optional<std::uint32_t> find_transition(const Transition& t) const;

  // Edges leaving q on letter a, ordered by destination.
  std::span<const Edge> successors(State q, Letter a) const;
  // Transition indices leaving / entering q.
  std::span<const std::uint32_t> outgoing(State q) const;
  std::span<const std::uint32_t> incoming(State q) const;

  const std::vector<State>& initial() const { return initial_; }
  const std::vector<State>& final() const { return final_; }
  bool is_initial(State q) const { return initial_mask_.at(q); }
  bool is_final(State q) const { return final_mask_.at(q); }
  const std::map<std::string, std::vector<State>>& extra_sets() const { return extra_; }

  bool is_deterministic() const;
  bool is_complete() const;

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::map<std::string, State, std::less<>> name_index_;
  std::vector<Transition> transitions_;
  std::vector<State> initial_;
  std::vector<State> final_;
  std::vector<bool> initial_mask_;
  std::vector<bool> final_mask_;
  std::map<std::string, std::vector<State>> extra_;
  // successors: edges_[edge_offset_[q * |Σ| + a] .. edge_offset_[q * |Σ| + a + 1])
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> edge_offset_;
  std::vector<std::uint32_t> out_;
  std::vector<std::uint32_t> out_offset_;
  std::vector<std::uint32_t> in_;
  std::vector<std::uint32_t> in_offset_;
};

struct WeightedTransition {
  Transition t;
  Weight weight;
};

class WeightedAutomaton {
 public:
  WeightedAutomaton() = default;
  // Duplicate triples must carry equal weights (merged); conflicting ones throw.
  WeightedAutomaton(Alphabet alphabet, std::vector<std::string> state_names,
                    std::vector<WeightedTransition> transitions, std::vector<State> initial,
                    std::vector<State> final);
  // weights[i] belongs to nfa.transitions()[i].
  WeightedAutomaton(Nfa nfa, std::vector<Weight> weights);

  const Nfa& nfa() const { return nfa_; }
  const Alphabet& alphabet() const { return nfa_.alphabet(); }
  std::size_t num_states() const { return nfa_.num_states(); }
  const Weight& weight(std::uint32_t index) const { return weights_.at(index); }
  const std::vector<Weight>& weights() const { return weights_; }

 private:
  Nfa nfa_;
  std::vector<Weight> weights_;
};

// Incremental construction helper used by every derived automaton.
class AutomatonBuilder {
 public:
  explicit AutomatonBuilder(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  State add_state(std::string name = {});
  std::size_t num_states() const { return names_.size(); }
  void add_transition(State src, Letter a, State dst, Weight w = Weight(1));
  void set_initial(State q) { initial_.push_back(q); }
  void set_final(State q) { final_.push_back(q); }
  void add_to_set(const std::string& set, State q) { extra_[set].push_back(q); }

  Nfa build_nfa() const;
  WeightedAutomaton build_weighted() const;

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<WeightedTransition> transitions_;
  std::vector<State> initial_;
  std::vector<State> final_;
  std::map<std::string, std::vector<State>> extra_;
};

}  // namespace wfoc
