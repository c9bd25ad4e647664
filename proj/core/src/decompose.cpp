#include "wfoc/decompose.hpp"

#include "wfoc/analysis.hpp"
#include "wfoc/error.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

namespace wfoc {

namespace {

std::string tuple_name(const Nfa& a, const OrderedRunState& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.runs.size(); ++i) {
    if (i) out += ',';
    out += a.state_name(s.runs[i]);
  }
  for (std::uint8_t c : s.bits) out += c ? ",1" : ",0";
  return out + ")";
}

// Non-decreasing k-tuples over `pool` (sorted), in lexicographic order.
void nondecreasing_tuples(const std::vector<State>& pool, std::size_t k, std::vector<State>& cur,
                          const std::function<void(const std::vector<State>&)>& emit) {
  if (cur.size() == k) {
    emit(cur);
    return;
  }
  for (State p : pool) {
    if (!cur.empty() && p < cur.back()) continue;
    cur.push_back(p);
    nondecreasing_tuples(pool, k, cur, emit);
    cur.pop_back();
  }
}

bool accepting(const Nfa& a, const OrderedRunState& s) {
  return std::all_of(s.runs.begin(), s.runs.end(), [&](State q) { return a.is_final(q); }) &&
         std::all_of(s.bits.begin(), s.bits.end(), [](std::uint8_t c) { return c == 1; });
}

std::optional<std::size_t> measured_index(const Nfa& a, bool& capped) {
  try {
    return aperiodicity_index(a);
  } catch (const LimitError&) {
    capped = true;
    return std::nullopt;
  }
}

DecomposeStage stage_of(std::string name, const Nfa& a, std::optional<std::size_t> bound) {
  DecomposeStage st;
  st.stage = std::move(name);
  st.states = a.num_states();
  st.transitions = a.transitions().size();
  st.index = measured_index(a, st.capped);
  st.bound = bound;
  return st;
}

}  // namespace

GeqAutomaton build_a_geq_k(const Nfa& a, std::size_t k) {
  if (k == 0) throw InputError("build_a_geq_k: k must be at least 1");
  std::map<OrderedRunState, State> ids;
  std::vector<OrderedRunState> states;
  std::deque<State> queue;
  AutomatonBuilder b(a.alphabet());
  auto intern = [&](OrderedRunState s) {
    auto [it, fresh] = ids.emplace(s, static_cast<State>(states.size()));
    if (fresh) {
      b.add_state(tuple_name(a, s));
      if (accepting(a, s)) b.set_final(it->second);
      states.push_back(std::move(s));
      queue.push_back(it->second);
    }
    return it->second;
  };

  std::vector<State> init = a.initial();
  std::sort(init.begin(), init.end());
  std::vector<State> cur;
  nondecreasing_tuples(init, k, cur, [&](const std::vector<State>& t) {
    OrderedRunState s{t, std::vector<std::uint8_t>(k - 1)};
    for (std::size_t l = 0; l + 1 < k; ++l) s.bits[l] = t[l] < t[l + 1];
    b.set_initial(intern(std::move(s)));
  });

  while (!queue.empty()) {
    const State id = queue.front();
    queue.pop_front();
    for (Letter x = 0; x < a.alphabet().size(); ++x) {
      // Choose the successor of each run left to right; the bit update is
      // deterministic and prunes tuples that would break the order.
      OrderedRunState next{std::vector<State>(k), std::vector<std::uint8_t>(k - 1)};
      std::function<void(std::size_t)> pick = [&](std::size_t l) {
        if (l == k) {
          b.add_transition(id, x, intern(next));
          return;
        }
        for (const Edge& e : a.successors(states[id].runs[l], x)) {
          if (l > 0) {
            const State prev = next.runs[l - 1];
            if (states[id].bits[l - 1] == 1) {
              next.bits[l - 1] = 1;
            } else if (prev == e.dst) {
              next.bits[l - 1] = 0;
            } else if (prev < e.dst) {
              next.bits[l - 1] = 1;
            } else {
              continue;
            }
          }
          next.runs[l] = e.dst;
          pick(l + 1);
        }
      };
      pick(0);
    }
  }
  return GeqAutomaton{b.build_nfa(), std::move(states), k};
}

ClassifierDfa build_a_leq_k(const Nfa& a, std::size_t k) {
  return minimize(negate(determinize(build_a_geq_k(a, k + 1).nfa)));
}

WeightedAutomaton build_a_k_ell(const WeightedAutomaton& a, std::size_t k, std::size_t ell) {
  if (ell < 1 || ell > k) throw InputError("build_a_k_ell: need 1 <= l <= k");
  const GeqAutomaton geq = build_a_geq_k(a.nfa(), k);
  std::vector<Weight> weights;
  weights.reserve(geq.nfa.transitions().size());
  for (const Transition& t : geq.nfa.transitions()) {
    const Transition base{geq.states[t.src].runs[ell - 1], t.letter, geq.states[t.dst].runs[ell - 1]};
    weights.push_back(a.weight(*a.nfa().find_transition(base)));
  }
  const WeightedAutomaton geq_ell(geq.nfa, std::move(weights));

  const Nfa leq = build_a_leq_k(a.nfa(), k).to_nfa();
  const Nfa leq_plain(leq.alphabet(), leq.state_names(), leq.transitions(), leq.initial(), leq.final());
  const WeightedAutomaton leq_w(leq_plain, std::vector<Weight>(leq_plain.transitions().size(), Weight(1)));
  return trim(product(leq_w, geq_ell, [](const Weight&, const Weight& w) { return w; }));
}

std::optional<Word> ambiguity_excess_witness(const Nfa& a, std::size_t k) {
  const Nfa geq = build_a_geq_k(a, k + 1).nfa;
  // BFS over states reached by non-empty words. An initial state reached
  // again is a distinct node from its word-start copy, hence from_root.
  struct Parent {
    State from;
    bool from_root;
    Letter letter;
  };
  std::vector<std::optional<Parent>> parent(geq.num_states());
  std::deque<State> queue;
  auto expand = [&](State q, bool is_root) {
    for (Letter x = 0; x < geq.alphabet().size(); ++x) {
      for (const Edge& e : geq.successors(q, x)) {
        if (parent[e.dst]) continue;
        parent[e.dst] = Parent{q, is_root, x};
        queue.push_back(e.dst);
      }
    }
  };
  std::vector<State> init = geq.initial();
  std::sort(init.begin(), init.end());
  for (State q : init) expand(q, true);
  while (!queue.empty()) {
    const State q = queue.front();
    queue.pop_front();
    if (geq.is_final(q)) {
      Word w;
      for (State cur = q;;) {
        const Parent& p = *parent[cur];
        w.push_back(p.letter);
        if (p.from_root) break;
        cur = p.from;
      }
      std::reverse(w.begin(), w.end());
      return w;
    }
    expand(q, false);
  }
  return std::nullopt;
}

std::optional<std::size_t> exact_ambiguity_degree(const Nfa& a) {
  if (is_finitely_ambiguous(trim(a)) != true) return std::nullopt;
  // Raise K to the run count of each excess witness until none is left;
  // finite ambiguity guarantees termination.
  std::size_t k = std::max<std::uint64_t>(1, ambiguity_degree_bounded(a, 6));
  while (auto w = ambiguity_excess_witness(a, k)) k = count_accepting_runs(a, *w);
  return k;
}

bool DecomposeResult::bounds_hold() const {
  return std::all_of(stages.begin(), stages.end(), [](const DecomposeStage& s) {
    return !s.bound || (s.index && *s.index <= *s.bound);
  });
}

std::string DecomposeResult::to_string() const {
  std::ostringstream out;
  out << "K=" << K << (auto_k ? " (auto)" : "") << " m=" << base_index << '\n';
  for (const DecomposeStage& s : stages) {
    out << s.stage << ": states=" << s.states << " transitions=" << s.transitions << " index=";
    if (s.index) {
      out << *s.index;
    } else {
      out << (s.capped ? "capped" : "periodic");
    }
    if (s.bound) out << " bound=" << *s.bound << (s.index && *s.index <= *s.bound ? " ok" : " VIOLATED");
    out << '\n';
  }
  return out.str();
}

DecomposeResult decompose(const WeightedAutomaton& input, std::size_t K) {
  // Trimming keeps the relative order of the surviving states, and every
  // accepting run stays inside the trim part, so the l-th run is unchanged.
  const WeightedAutomaton a = trim(input);
  const std::optional<std::size_t> m = aperiodicity_index(a.nfa());
  if (!m) throw HypothesisError("automaton is not aperiodic", "its transition monoid contains a non-trivial group");

  DecomposeResult res;
  res.base_index = *m;
  if (K == 0) {
    res.auto_k = true;
    const std::optional<std::size_t> degree = exact_ambiguity_degree(a.nfa());
    if (!degree) throw HypothesisError("automaton is not certified finitely ambiguous", "");
    K = *degree;
  } else if (auto w = ambiguity_excess_witness(a.nfa(), K)) {
    throw HypothesisError("automaton is not " + std::to_string(K) + "-ambiguous",
                          "word '" + a.alphabet().format(*w) + "' has " +
                              std::to_string(count_accepting_runs(a.nfa(), *w)) + " accepting runs");
  }
  res.K = K;

  for (std::size_t k = 1; k <= K; ++k) {
    res.stages.push_back(stage_of("A_>=" + std::to_string(k), build_a_geq_k(a.nfa(), k).nfa, k * (*m + 1)));
  }
  std::vector<std::vector<WeightedAutomaton>> by_ell(K + 1);
  for (std::size_t k = 1; k <= K; ++k) {
    for (std::size_t ell = 1; ell <= k; ++ell) {
      WeightedAutomaton part = build_a_k_ell(a, k, ell);
      res.stages.push_back(stage_of("A_" + std::to_string(k) + "^" + std::to_string(ell), part.nfa(), std::nullopt));
      by_ell[ell].push_back(std::move(part));
    }
  }
  for (std::size_t ell = 1; ell <= K; ++ell) {
    WeightedAutomaton b = by_ell[ell].front();
    for (std::size_t i = 1; i < by_ell[ell].size(); ++i) b = disjoint_union(b, by_ell[ell][i]);
    b = trim(b);
    res.stages.push_back(stage_of("B_" + std::to_string(ell), b.nfa(), std::nullopt));
    res.parts.push_back(std::move(b));
  }
  return res;
}

}  // namespace wfoc
