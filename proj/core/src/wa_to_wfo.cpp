#include "wfoc/wa_to_wfo.hpp"

#include "wfoc/analysis.hpp"
#include "wfoc/error.hpp"

#include <algorithm>

namespace wfoc {

namespace {

void require_aperiodic(const Nfa& a) {
  if (!is_aperiodic(a)) {
    throw HypothesisError("automaton is not aperiodic", "its transition monoid contains a non-trivial group");
  }
}

// if φ_δ1 then wgt(δ1) else ... if φ_δk then wgt(δk) else wgt(δk).
Step cascade(const WeightedAutomaton& a, const std::vector<Fo>& guards) {
  const std::size_t k = guards.size();
  if (k == 0) throw InputError("automaton without transitions");
  Step s = step::constant(a.weight(static_cast<std::uint32_t>(k - 1)));
  for (std::size_t i = k; i-- > 0;) s = step::ite(guards[i], step::constant(a.weight(static_cast<std::uint32_t>(i))), s);
  return s;
}

std::string y_var(std::size_t i) { return "y" + std::to_string(i); }

}  // namespace

RunRefPtr make_run_ref(const Nfa& a, const std::string& name) {
  return std::make_shared<const RunRef>(RunRef{name, a});
}

Fo lang_sentence(const RunRefPtr& a, State p, State q) {
  require_aperiodic(a->automaton);
  return fo::run(a, p, q);
}

Fo transition_formula(const RunRefPtr& a, State p, State q, const Transition& delta, const std::string& x) {
  const std::string& letter = a->automaton.alphabet().name(delta.letter);
  return fo::conj_all({fo::run(a, p, delta.src, {}, x), fo::letter(letter, x), fo::run(a, delta.dst, q, x, {})});
}

namespace {

Wfo main1(const WeightedAutomaton& a, const RunRefPtr& ref, State p, State q) {
  std::vector<Fo> guards;
  for (const Transition& t : a.nfa().transitions()) guards.push_back(transition_formula(ref, p, q, t));
  return wfo::ite(fo::run(ref, p, q), wfo::prod("x", cascade(a, guards)), wfo::zero());
}

}  // namespace

Wfo unambiguous_to_wfo(const WeightedAutomaton& a, State p, State q, const std::string& name) {
  require_aperiodic(a.nfa());
  if (auto w = ambiguity_witness_between(a.nfa(), p, q)) {
    throw HypothesisError("automaton is not unambiguous from " + a.nfa().state_name(p) + " to " +
                              a.nfa().state_name(q),
                          w->describe(a.nfa()));
  }
  return main1(a, make_run_ref(a.nfa(), name), p, q);
}

Wfo unambiguous_wa_to_wfo(const WeightedAutomaton& a, const std::string& name) {
  require_aperiodic(a.nfa());
  if (auto w = ambiguity_witness(a.nfa())) throw HypothesisError("automaton is not unambiguous", w->describe(a.nfa()));
  const RunRefPtr ref = make_run_ref(a.nfa(), name);
  std::vector<std::pair<State, State>> pairs;
  for (State p : a.nfa().initial()) {
    for (State q : a.nfa().final()) pairs.emplace_back(p, q);
  }
  Wfo out = wfo::zero();
  for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
    const Wfo phi_pq = main1(a, ref, it->first, it->second);
    // phi_pq is guard ? prod : zero; the nested form reuses its guard and product.
    out = wfo::ite(phi_pq->cond, phi_pq->lhs, out);
  }
  return out;
}

std::vector<SwitchingSequence> enumerate_switching(const Nfa& a, State p, State q) {
  const SccDecomposition scc = scc_decompose(a);
  if (scc.same(p, q)) throw InputError("switching sequences need states in different SCCs");
  std::vector<SwitchingSequence> out;
  const std::uint32_t target = scc.component[q];
  SwitchingSequence cur;
  // Components are topologically numbered, so nothing past target reaches q.
  auto dfs = [&](auto&& self, std::uint32_t comp) -> void {
    if (comp == target) {
      out.push_back(cur);
      return;
    }
    for (State r : scc.members[comp]) {
      for (std::uint32_t idx : a.outgoing(r)) {
        const std::uint32_t next = scc.component[a.transition(idx).dst];
        if (next == comp || next > target) continue;
        cur.transitions.push_back(idx);
        self(self, next);
        cur.transitions.pop_back();
      }
    }
  };
  dfs(dfs, scc.component[p]);
  std::sort(out.begin(), out.end(),
            [](const SwitchingSequence& l, const SwitchingSequence& r) { return l.transitions < r.transitions; });
  return out;
}

Wfo switching_to_wfo(const WeightedAutomaton& a, const RunRefPtr& ref, State p, const SwitchingSequence& seq,
                     State q) {
  const Nfa& n = a.nfa();
  const SccDecomposition scc = scc_decompose(n);
  const std::size_t m = seq.transitions.size();
  if (m == 0) throw InputError("empty switching sequence");
  std::vector<Transition> d;
  for (std::uint32_t idx : seq.transitions) d.push_back(n.transition(idx));
  auto letter = [&](const Transition& t) { return n.alphabet().name(t.letter); };

  // φ(y1..ym): switch positions in order, letters, and runs on the segments.
  std::vector<Fo> parts;
  for (std::size_t i = 1; i < m; ++i) parts.push_back(fo::lt(y_var(i), y_var(i + 1)));
  for (std::size_t i = 1; i <= m; ++i) parts.push_back(fo::letter(letter(d[i - 1]), y_var(i)));
  parts.push_back(fo::run(ref, p, d[0].src, {}, y_var(1)));
  for (std::size_t i = 1; i < m; ++i) parts.push_back(fo::run(ref, d[i - 1].dst, d[i].src, y_var(i), y_var(i + 1)));
  parts.push_back(fo::run(ref, d[m - 1].dst, q, y_var(m), {}));
  const Fo phi = fo::conj_all(parts);

  // Segment j runs inside the SCC of its entry state; 0 = before y1, m = after ym.
  std::vector<Fo> guards;
  for (std::uint32_t idx = 0; idx < n.transitions().size(); ++idx) {
    const Transition& t = n.transition(idx);
    const auto hit = std::find(seq.transitions.begin(), seq.transitions.end(), idx);
    if (hit != seq.transitions.end()) {
      guards.push_back(fo::eq("x", y_var(static_cast<std::size_t>(hit - seq.transitions.begin()) + 1)));
      continue;
    }
    Fo g = fo::bottom();
    for (std::size_t j = 0; j <= m; ++j) {
      const State entry = j == 0 ? p : d[j - 1].dst;
      const State exit = j == m ? q : d[j].src;
      if (!scc.same(t.src, entry) || !scc.same(t.dst, entry)) continue;
      std::vector<Fo> g_parts;
      if (j > 0) g_parts.push_back(fo::lt(y_var(j), "x"));
      if (j < m) g_parts.push_back(fo::lt("x", y_var(j + 1)));
      g_parts.push_back(fo::run(ref, entry, t.src, j == 0 ? std::string() : y_var(j), "x"));
      g_parts.push_back(fo::letter(letter(t), "x"));
      g_parts.push_back(fo::run(ref, t.dst, exit, "x", j == m ? std::string() : y_var(j + 1)));
      g = fo::conj_all(g_parts);
      break;
    }
    guards.push_back(g);
  }
  Wfo out = wfo::ite(phi, wfo::prod("x", cascade(a, guards)), wfo::zero());
  for (std::size_t i = m; i >= 1; --i) out = wfo::sum(y_var(i), out);
  return out;
}

Wfo scc_unambiguous_to_wfo(const WeightedAutomaton& a, const std::string& name) {
  const Nfa& n = a.nfa();
  require_aperiodic(n);
  if (auto w = scc_ambiguity_witness(n)) throw HypothesisError("automaton is not SCC-unambiguous", w->describe(n));
  const RunRefPtr ref = make_run_ref(n, name);
  const SccDecomposition scc = scc_decompose(n);
  std::vector<Wfo> terms;
  for (State p : n.initial()) {
    for (State q : n.final()) {
      if (scc.same(p, q)) {
        terms.push_back(main1(a, ref, p, q));
        continue;
      }
      std::vector<Wfo> seqs;
      for (const auto& s : enumerate_switching(n, p, q)) seqs.push_back(switching_to_wfo(a, ref, p, s, q));
      terms.push_back(wfo::plus_all(seqs));
    }
  }
  return wfo::plus_all(terms);
}

}  // namespace wfoc
