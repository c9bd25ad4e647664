#include "wfoc/io.hpp"

#include "wfoc/error.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace wfoc {

WeightedAutomaton ParsedAutomaton::as_weighted() const {
  if (!weights) throw InputError("automaton has no weights");
  return WeightedAutomaton(nfa, *weights);
}

namespace {

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

ParsedAutomaton parse_automaton(std::string_view text) {
  std::optional<std::vector<std::string>> alphabet, states;
  std::vector<std::string> initial, final;
  std::map<std::string, std::vector<std::string>> extra;
  struct RawTrans {
    std::string src, letter, dst;
    std::optional<std::string> weight;
    std::size_t line;
  };
  std::vector<RawTrans> trans;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw InputError("line " + std::to_string(line_no) + ": expected 'key: values'");
    }
    const std::string key(strip(line.substr(0, colon)));
    const auto values = split_ws(line.substr(colon + 1));
    auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
    if (key == "alphabet") {
      if (alphabet) throw InputError(where() + "duplicate alphabet");
      alphabet = values;
    } else if (key == "states") {
      if (states) throw InputError(where() + "duplicate states");
      states = values;
    } else if (key == "initial") {
      initial.insert(initial.end(), values.begin(), values.end());
    } else if (key == "final") {
      final.insert(final.end(), values.begin(), values.end());
    } else if (key.rfind("accepting", 0) == 0) {
      const std::string name(strip(std::string_view(key).substr(9)));
      if (name.empty()) throw InputError(where() + "accepting set needs a name");
      auto& set = extra[name];
      set.insert(set.end(), values.begin(), values.end());
    } else if (key == "trans") {
      if (values.size() != 3 && values.size() != 4) {
        throw InputError(where() + "expected 'trans: src letter dst [weight]'");
      }
      RawTrans t{values[0], values[1], values[2], std::nullopt, line_no};
      if (values.size() == 4) t.weight = values[3];
      trans.push_back(std::move(t));
    } else {
      throw InputError(where() + "unknown key '" + key + "'");
    }
  }
  if (!alphabet) throw InputError("missing 'alphabet:' line");
  if (!states) throw InputError("missing 'states:' line");

  Alphabet sigma(*alphabet);
  // Resolve names through a scratch Nfa so duplicate names are rejected once.
  Nfa scratch(sigma, *states, {}, {}, {});
  auto resolve = [&](const std::vector<std::string>& names) {
    std::vector<State> out;
    for (const auto& n : names) out.push_back(scratch.state_at(n));
    return out;
  };
  std::size_t with_weight = 0;
  for (const auto& t : trans) with_weight += t.weight.has_value();
  if (with_weight != 0 && with_weight != trans.size()) {
    throw InputError("either every transition carries a weight or none does");
  }
  const bool weighted = with_weight > 0;
  std::vector<WeightedTransition> wts;
  for (const auto& t : trans) {
    try {
      Transition tr{scratch.state_at(t.src), sigma.at(t.letter), scratch.state_at(t.dst)};
      wts.push_back(WeightedTransition{tr, weighted ? Weight::parse(*t.weight) : Weight(1)});
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(t.line) + ": " + e.what());
    }
  }
  std::map<std::string, std::vector<State>> extra_ids;
  for (const auto& [name, set] : extra) extra_ids[name] = resolve(set);

  WeightedAutomaton merged(sigma, *states, std::move(wts), resolve(initial), resolve(final));
  const Nfa& m = merged.nfa();
  ParsedAutomaton out{Nfa(m.alphabet(), m.state_names(), m.transitions(), m.initial(), m.final(), extra_ids),
                      std::nullopt};
  if (weighted) out.weights = merged.weights();
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ParsedAutomaton read_automaton_file(const std::string& path) {
  try {
    return parse_automaton(read_text_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

namespace {

std::string format_impl(const Nfa& a, const std::vector<Weight>* weights) {
  std::ostringstream out;
  auto set_line = [&](const std::string& key, const std::vector<State>& set) {
    out << key << ":";
    for (State q : set) out << ' ' << a.state_name(q);
    out << '\n';
  };
  out << "alphabet:";
  for (const auto& l : a.alphabet().names()) out << ' ' << l;
  out << "\nstates:";
  for (const auto& n : a.state_names()) out << ' ' << n;
  out << '\n';
  set_line("initial", a.initial());
  set_line("final", a.final());
  for (const auto& [name, set] : a.extra_sets()) set_line("accepting " + name, set);
  for (std::uint32_t i = 0; i < a.transitions().size(); ++i) {
    const Transition& t = a.transition(i);
    out << "trans: " << a.state_name(t.src) << ' ' << a.alphabet().name(t.letter) << ' ' << a.state_name(t.dst);
    if (weights) out << ' ' << (*weights)[i].to_string();
    out << '\n';
  }
  return out.str();
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string dot_impl(const Nfa& a, const std::vector<Weight>* weights, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n";
  for (State q = 0; q < a.num_states(); ++q) {
    out << "  s" << q << " [label=\"" << dot_escape(a.state_name(q)) << "\", shape="
        << (a.is_final(q) ? "doublecircle" : "circle") << "];\n";
  }
  for (State q : a.initial()) {
    out << "  init" << q << " [shape=point, style=invis];\n  init" << q << " -> s" << q << ";\n";
  }
  for (std::uint32_t i = 0; i < a.transitions().size(); ++i) {
    const Transition& t = a.transition(i);
    std::string label = a.alphabet().name(t.letter);
    if (weights) label += " | " + (*weights)[i].to_string();
    out << "  s" << t.src << " -> s" << t.dst << " [label=\"" << dot_escape(label) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string format_automaton(const Nfa& a) { return format_impl(a, nullptr); }
std::string format_automaton(const WeightedAutomaton& a) { return format_impl(a.nfa(), &a.weights()); }
std::string to_dot(const Nfa& a, const std::string& graph_name) { return dot_impl(a, nullptr, graph_name); }
std::string to_dot(const WeightedAutomaton& a, const std::string& graph_name) {
  return dot_impl(a.nfa(), &a.weights(), graph_name);
}

}  // namespace wfoc
