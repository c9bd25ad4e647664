#include "wfoc/automaton.hpp"

#include "wfoc/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace wfoc {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (Letter a = 0; a < names_.size(); ++a) {
    if (names_[a].empty()) throw InputError("empty letter name");
    if (!index_.emplace(names_[a], a).second) {
      throw InputError("duplicate letter '" + names_[a] + "'");
    }
  }
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Letter Alphabet::at(std::string_view name) const {
  if (auto a = find(name)) return *a;
  throw InputError("unknown letter '" + std::string(name) + "'");
}

bool Alphabet::single_char() const {
  return std::all_of(names_.begin(), names_.end(), [](const std::string& n) { return n.size() == 1; });
}

Word Alphabet::parse_word(std::string_view text) const {
  Word word;
  word.reserve(text.size());
  for (char c : text) word.push_back(at(std::string_view(&c, 1)));
  return word;
}

Word Alphabet::parse_tokens(std::string_view text) const {
  Word word;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) word.push_back(at(token));
  return word;
}

std::string Alphabet::format(std::span<const Letter> word) const {
  std::string out;
  const bool compact = single_char();
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += name(word[i]);
  }
  return out;
}

namespace {

void check_states(const std::vector<State>& set, std::size_t n, const char* what) {
  for (State q : set) {
    if (q >= n) throw InputError(std::string(what) + " references undeclared state " + std::to_string(q));
  }
}

std::vector<State> normalized(std::vector<State> set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

}  // namespace

Nfa::Nfa(Alphabet alphabet, std::vector<std::string> state_names, std::vector<Transition> transitions,
         std::vector<State> initial, std::vector<State> final,
         std::map<std::string, std::vector<State>> extra_sets)
    : alphabet_(std::move(alphabet)), names_(std::move(state_names)), transitions_(std::move(transitions)) {
  const std::size_t n = names_.size();
  for (State q = 0; q < n; ++q) {
    if (names_[q].empty()) names_[q] = std::to_string(q + 1);
    if (!name_index_.emplace(names_[q], q).second) {
      throw InputError("duplicate state name '" + names_[q] + "'");
    }
  }
  for (const Transition& t : transitions_) {
    if (t.src >= n || t.dst >= n) throw InputError("transition references undeclared state");
    if (t.letter >= alphabet_.size()) throw InputError("transition references undeclared letter");
  }
  std::sort(transitions_.begin(), transitions_.end());
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());

  check_states(initial, n, "initial set");
  check_states(final, n, "final set");
  initial_ = normalized(std::move(initial));
  final_ = normalized(std::move(final));
  for (auto& [name, set] : extra_sets) {
    check_states(set, n, "accepting set");
    extra_[name] = normalized(std::move(set));
  }
  initial_mask_.assign(n, false);
  final_mask_.assign(n, false);
  for (State q : initial_) initial_mask_[q] = true;
  for (State q : final_) final_mask_[q] = true;

  const std::size_t sigma = alphabet_.size();
  edge_offset_.assign(n * sigma + 1, 0);
  out_offset_.assign(n + 1, 0);
  in_offset_.assign(n + 1, 0);
  for (const Transition& t : transitions_) {
    ++edge_offset_[t.src * sigma + t.letter + 1];
    ++out_offset_[t.src + 1];
    ++in_offset_[t.dst + 1];
  }
  for (std::size_t i = 1; i < edge_offset_.size(); ++i) edge_offset_[i] += edge_offset_[i - 1];
  for (std::size_t i = 1; i <= n; ++i) {
    out_offset_[i] += out_offset_[i - 1];
    in_offset_[i] += in_offset_[i - 1];
  }
  // Sorted transitions make edges_ and out_ contiguous in index order.
  edges_.resize(transitions_.size());
  out_.resize(transitions_.size());
  in_.resize(transitions_.size());
  std::vector<std::uint32_t> in_fill(in_offset_.begin(), in_offset_.end() - 1);
  for (std::uint32_t i = 0; i < transitions_.size(); ++i) {
    const Transition& t = transitions_[i];
    edges_[i] = Edge{t.dst, i};
    out_[i] = i;
    in_[in_fill[t.dst]++] = i;
  }
}

std::optional<State> Nfa::find_state(std::string_view name) const {
  auto it = name_index_.find(name);
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

State Nfa::state_at(std::string_view name) const {
  if (auto q = find_state(name)) return *q;
  throw InputError("unknown state '" + std::string(name) + "'");
}

std::optional<std::uint32_t> Nfa::find_transition(const Transition& t) const {
  auto it = std::lower_bound(transitions_.begin(), transitions_.end(), t);
  if (it == transitions_.end() || *it != t) return std::nullopt;
  return static_cast<std::uint32_t>(it - transitions_.begin());
}

std::span<const Edge> Nfa::successors(State q, Letter a) const {
  const std::size_t slot = static_cast<std::size_t>(q) * alphabet_.size() + a;
  return {edges_.data() + edge_offset_.at(slot), edges_.data() + edge_offset_.at(slot + 1)};
}

std::span<const std::uint32_t> Nfa::outgoing(State q) const {
  return {out_.data() + out_offset_.at(q), out_.data() + out_offset_.at(q + 1)};
}

std::span<const std::uint32_t> Nfa::incoming(State q) const {
  return {in_.data() + in_offset_.at(q), in_.data() + in_offset_.at(q + 1)};
}

bool Nfa::is_deterministic() const {
  if (initial_.size() > 1) return false;
  for (State q = 0; q < num_states(); ++q) {
    for (Letter a = 0; a < alphabet_.size(); ++a) {
      if (successors(q, a).size() > 1) return false;
    }
  }
  return true;
}

bool Nfa::is_complete() const {
  if (initial_.empty()) return false;
  for (State q = 0; q < num_states(); ++q) {
    for (Letter a = 0; a < alphabet_.size(); ++a) {
      if (successors(q, a).empty()) return false;
    }
  }
  return true;
}

WeightedAutomaton::WeightedAutomaton(Alphabet alphabet, std::vector<std::string> state_names,
                                     std::vector<WeightedTransition> transitions, std::vector<State> initial,
                                     std::vector<State> final) {
  std::sort(transitions.begin(), transitions.end(),
            [](const WeightedTransition& x, const WeightedTransition& y) { return x.t < y.t; });
  std::vector<Transition> plain;
  std::vector<Weight> weights;
  for (const WeightedTransition& wt : transitions) {
    if (!plain.empty() && plain.back() == wt.t) {
      if (weights.back() != wt.weight) {
        throw InputError("conflicting weights " + weights.back().to_string() + " and " + wt.weight.to_string() +
                         " on one transition");
      }
      continue;
    }
    plain.push_back(wt.t);
    weights.push_back(wt.weight);
  }
  nfa_ = Nfa(std::move(alphabet), std::move(state_names), std::move(plain), std::move(initial), std::move(final));
  weights_ = std::move(weights);
}

WeightedAutomaton::WeightedAutomaton(Nfa nfa, std::vector<Weight> weights)
    : nfa_(std::move(nfa)), weights_(std::move(weights)) {
  if (weights_.size() != nfa_.transitions().size()) {
    throw InputError("weight table does not match the transition set");
  }
}

State AutomatonBuilder::add_state(std::string name) {
  names_.push_back(std::move(name));
  return static_cast<State>(names_.size() - 1);
}

void AutomatonBuilder::add_transition(State src, Letter a, State dst, Weight w) {
  transitions_.push_back(WeightedTransition{Transition{src, a, dst}, std::move(w)});
}

Nfa AutomatonBuilder::build_nfa() const {
  std::vector<Transition> plain;
  plain.reserve(transitions_.size());
  for (const auto& wt : transitions_) plain.push_back(wt.t);
  return Nfa(alphabet_, names_, std::move(plain), initial_, final_, extra_);
}

WeightedAutomaton AutomatonBuilder::build_weighted() const {
  WeightedAutomaton merged(alphabet_, names_, transitions_, initial_, final_);
  if (extra_.empty()) return merged;
  const Nfa& n = merged.nfa();
  Nfa with_sets(n.alphabet(), n.state_names(), n.transitions(), n.initial(), n.final(), extra_);
  return WeightedAutomaton(std::move(with_sets), merged.weights());
}

}  // namespace wfoc
