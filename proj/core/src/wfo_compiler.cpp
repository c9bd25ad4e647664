#include "wfoc/wfo_compiler.hpp"

#include "wfoc/analysis.hpp"
#include "wfoc/error.hpp"
#include "wfoc/fo_compiler.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace wfoc {

std::string CompileReport::to_string() const {
  std::ostringstream out;
  for (const auto& s : stages) {
    out << s.stage << ": states=" << s.states << " transitions=" << s.transitions << " index=";
    if (s.index) {
      out << *s.index;
    } else {
      out << (s.capped ? "capped" : "none");
    }
    if (s.bound) out << " bound=" << *s.bound;
    out << "\n";
  }
  return out.str();
}

bool CompileReport::bounds_hold() const {
  return std::all_of(stages.begin(), stages.end(), [](const StageReport& s) {
    return !s.bound || (s.index && *s.index <= *s.bound);
  });
}

namespace {

// Measured aperiodicity index; nullopt and capped = true past the cap.
std::optional<std::size_t> measure(const Nfa& a, const CompileReport& report, bool& capped) {
  try {
    return aperiodicity_index(a, report.max_monoid);
  } catch (const LimitError&) {
    capped = true;
    return std::nullopt;
  }
}

void record(CompileReport* report, std::string stage, const WeightedAutomaton& a,
            std::optional<std::size_t> bound = std::nullopt) {
  if (!report) return;
  StageReport s;
  s.stage = std::move(stage);
  s.states = a.num_states();
  s.transitions = a.nfa().transitions().size();
  s.index = measure(a.nfa(), *report, s.capped);
  s.bound = bound;
  report->stages.push_back(std::move(s));
}

template <class Key>
class Interner {
 public:
  explicit Interner(AutomatonBuilder& b) : builder_(b) {}
  // Returns the state id; new keys are queued for exploration.
  State get(const Key& k) {
    auto [it, fresh] = ids_.emplace(k, 0);
    if (fresh) {
      it->second = builder_.add_state();
      queue_.push_back(k);
    }
    return it->second;
  }
  bool pop(Key& k, State& id) {
    if (head_ == queue_.size()) return false;
    k = queue_[head_++];
    id = ids_.at(k);
    return true;
  }

 private:
  AutomatonBuilder& builder_;
  std::map<Key, State> ids_;
  std::vector<Key> queue_;
  std::size_t head_ = 0;
};

std::vector<State> image(const ClassifierDfa& d, const std::vector<State>& set, Letter a) {
  std::vector<State> out;
  out.reserve(set.size());
  for (State s : set) out.push_back(d.next(s, a));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void require_vars(const std::set<std::string>& free, const ExtAlphabet& ext, const std::string& extra = {}) {
  for (const auto& v : free) {
    if (v != extra && !ext.var_index(v)) throw ScopeError("variable '" + v + "' is not in the variable set");
  }
}

}  // namespace

WeightedAutomaton build_step_transducer(const Fo& phi, const std::string& x, const ExtAlphabet& ext,
                                        CompileReport* report) {
  if (ext.var_index(x)) throw ScopeError("step variable '" + x + "' already in the variable set");
  require_vars(free_vars(phi), ext, x);
  const ExtAlphabet inner = ext.extend(x);
  const ClassifierDfa d = compile_fo(phi, inner);
  const std::uint32_t xbit = std::uint32_t{1} << ext.num_vars();

  // (p, X, Y, b)
  using Key = std::tuple<State, std::vector<State>, std::vector<State>, bool>;
  AutomatonBuilder b(ext.alphabet());
  Interner<Key> states(b);
  const Key init{d.initial(), {}, {}, false};
  states.get(init);
  b.set_initial(0);
  Key k;
  State id;
  while (states.pop(k, id)) {
    const auto& [p, xs, ys, bit] = k;
    const bool final = k != init &&
                       std::all_of(xs.begin(), xs.end(), [&](State s) { return d.verdict(s) == Verdict::kHolds; }) &&
                       std::all_of(ys.begin(), ys.end(), [&](State s) { return d.verdict(s) == Verdict::kFails; });
    if (final) b.set_final(id);
    for (Letter a = 0; a < ext.size(); ++a) {
      const Letter a0 = inner.letter(ext.base_of(a), ext.mask_of(a));
      const Letter a1 = inner.letter(ext.base_of(a), ext.mask_of(a) | xbit);
      const State p2 = d.next(p, a0);
      const State marked = d.next(p, a1);
      std::vector<State> x2 = image(d, xs, a0), y2 = image(d, ys, a0);
      std::vector<State> xpos = x2, yneg = y2;
      xpos.insert(std::upper_bound(xpos.begin(), xpos.end(), marked), marked);
      xpos.erase(std::unique(xpos.begin(), xpos.end()), xpos.end());
      yneg.insert(std::upper_bound(yneg.begin(), yneg.end(), marked), marked);
      yneg.erase(std::unique(yneg.begin(), yneg.end()), yneg.end());
      b.add_transition(id, a, states.get(Key{p2, std::move(xpos), y2, true}), Weight(1));
      b.add_transition(id, a, states.get(Key{p2, x2, std::move(yneg), false}), Weight(0));
    }
  }
  WeightedAutomaton out = trim(b.build_weighted());
  if (report) {
    bool capped = false;
    const auto m = measure(d.to_nfa(), *report, capped);
    std::optional<std::size_t> bound;
    if (m) bound = 2 * *m + 2 * d.num_states();
    record(report, "step-transducer[" + to_string(phi) + "]", out, bound);
  }
  return out;
}

WeightedAutomaton compile_product(const std::string& x, const Step& psi, const ExtAlphabet& ext,
                                  CompileReport* report) {
  std::vector<Fo> conds = step_conditions(psi);
  if (conds.empty()) conds.push_back(fo::top());
  std::vector<WeightedAutomaton> ts;
  ts.reserve(conds.size());
  for (const Fo& c : conds) ts.push_back(build_step_transducer(c, x, ext, report));

  const std::size_t k = ts.size();
  using Key = std::vector<State>;
  AutomatonBuilder b(ext.alphabet());
  Interner<Key> states(b);
  // Every transducer has one initial state unless its support is empty.
  Key init;
  for (const auto& t : ts) {
    if (t.nfa().initial().empty()) return trim(b.build_weighted());
    init.push_back(t.nfa().initial().front());
  }
  states.get(init);
  b.set_initial(0);
  Key cur;
  State id;
  while (states.pop(cur, id)) {
    bool final = true;
    for (std::size_t i = 0; i < k; ++i) final = final && ts[i].nfa().is_final(cur[i]);
    if (final) b.set_final(id);
    for (Letter a = 0; a < ext.size(); ++a) {
      std::vector<std::span<const Edge>> succ(k);
      bool any = true;
      for (std::size_t i = 0; i < k; ++i) {
        succ[i] = ts[i].nfa().successors(cur[i], a);
        any = any && !succ[i].empty();
      }
      if (!any) continue;
      std::vector<std::size_t> pick(k, 0);
      while (true) {
        Key dst(k);
        std::vector<bool> bits(k);
        for (std::size_t i = 0; i < k; ++i) {
          const Edge& e = succ[i][pick[i]];
          dst[i] = e.dst;
          bits[i] = ts[i].weight(e.index) == Weight(1);
        }
        b.add_transition(id, a, states.get(dst), select_weight(psi, conds, bits));
        std::size_t i = 0;
        while (i < k && ++pick[i] == succ[i].size()) pick[i++] = 0;
        if (i == k) break;
      }
    }
  }
  WeightedAutomaton out = trim(b.build_weighted());
  record(report, "product[" + x + "]", out);
  return out;
}

WeightedAutomaton compile_ite(const Fo& phi, const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                              const ExtAlphabet& ext, CompileReport* report) {
  if (!(a1.alphabet() == ext.alphabet()) || !(a2.alphabet() == ext.alphabet())) {
    throw InputError("alphabet mismatch in if-then-else");
  }
  require_vars(free_vars(phi), ext);
  const ClassifierDfa d = compile_fo(phi, ext);
  const WeightedAutomaton* side[2] = {&a1, &a2};
  using Key = std::tuple<State, int, State>;  // (classifier state, branch, branch state)
  AutomatonBuilder b(ext.alphabet());
  Interner<Key> states(b);
  for (int s = 0; s < 2; ++s) {
    for (State q : side[s]->nfa().initial()) b.set_initial(states.get(Key{d.initial(), s, q}));
  }
  Key k;
  State id;
  while (states.pop(k, id)) {
    const auto [p, s, q] = k;
    const WeightedAutomaton& a = *side[s];
    const Verdict want = s == 0 ? Verdict::kHolds : Verdict::kFails;
    if (d.verdict(p) == want && a.nfa().is_final(q)) b.set_final(id);
    for (Letter l = 0; l < ext.size(); ++l) {
      const State p2 = d.next(p, l);
      for (const Edge& e : a.nfa().successors(q, l)) b.add_transition(id, l, states.get(Key{p2, s, e.dst}), a.weight(e.index));
    }
  }
  WeightedAutomaton out = trim(b.build_weighted());
  record(report, "ite[" + to_string(phi) + "]", out);
  return out;
}

WeightedAutomaton compile_plus(const WeightedAutomaton& a1, const WeightedAutomaton& a2, CompileReport* report) {
  WeightedAutomaton out = disjoint_union(a1, a2);
  record(report, "plus", out);
  return out;
}

WeightedAutomaton compile_sum_var(const WeightedAutomaton& a, const ExtAlphabet& inner, const std::string& y,
                                  CompileReport* report) {
  if (!(a.alphabet() == inner.alphabet())) throw InputError("alphabet mismatch in sum");
  const std::size_t iy = inner.var_at(y);
  const ExtAlphabet outer = inner.remove(y);
  const std::uint32_t ybit = std::uint32_t{1} << iy;
  const std::uint32_t low = ybit - 1;
  auto outer_letter = [&](Letter l) {
    const std::uint32_t m = inner.mask_of(l);
    return outer.letter(inner.base_of(l), (m & low) | ((m >> (iy + 1)) << iy));
  };
  // State (q, layer) is 2q + layer.
  const Nfa& n = a.nfa();
  std::vector<WeightedTransition> ts;
  for (std::uint32_t i = 0; i < n.transitions().size(); ++i) {
    const Transition& t = n.transition(i);
    const Letter l = outer_letter(t.letter);
    if ((inner.mask_of(t.letter) & ybit) == 0) {
      ts.push_back({{2 * t.src, l, 2 * t.dst}, a.weight(i)});
      ts.push_back({{2 * t.src + 1, l, 2 * t.dst + 1}, a.weight(i)});
    } else {
      ts.push_back({{2 * t.src, l, 2 * t.dst + 1}, a.weight(i)});
    }
  }
  std::vector<State> init, fin;
  for (State q : n.initial()) init.push_back(2 * q);
  for (State q : n.final()) fin.push_back(2 * q + 1);
  WeightedAutomaton out =
      trim(WeightedAutomaton(outer.alphabet(), std::vector<std::string>(2 * n.num_states()), std::move(ts),
                             std::move(init), std::move(fin)));
  if (report) {
    bool capped = false;
    const auto m = measure(n, *report, capped);
    std::optional<std::size_t> bound;
    if (m) bound = 2 * *m;
    record(report, "sum[" + y + "]", out, bound);
  }
  return out;
}

namespace {

WeightedAutomaton zero_automaton(const ExtAlphabet& ext) {
  AutomatonBuilder b(ext.alphabet());
  b.set_initial(b.add_state());
  return b.build_weighted();
}

WeightedAutomaton compile_rec(const Wfo& phi, const ExtAlphabet& ext, CompileReport* report) {
  switch (phi->kind) {
    case WfoKind::kZero: return zero_automaton(ext);
    case WfoKind::kProd: return compile_product(phi->var, phi->body_step, ext, report);
    case WfoKind::kIte:
      return compile_ite(phi->cond, compile_rec(phi->lhs, ext, report), compile_rec(phi->rhs, ext, report), ext,
                         report);
    case WfoKind::kPlus:
      return compile_plus(compile_rec(phi->lhs, ext, report), compile_rec(phi->rhs, ext, report), report);
    case WfoKind::kSum: {
      if (ext.var_index(phi->var)) throw ScopeError("sum rebinds variable '" + phi->var + "'");
      const ExtAlphabet inner = ext.extend(phi->var);
      return compile_sum_var(compile_rec(phi->lhs, inner, report), inner, phi->var, report);
    }
  }
  throw InputError("unknown formula node");
}

}  // namespace

WeightedAutomaton compile_wfo(const Wfo& phi, const ExtAlphabet& ext, CompileReport* report) {
  require_vars(free_vars(phi), ext);
  return compile_rec(phi, ext, report);
}

WeightedAutomaton compile_wfo(const Wfo& phi, const Alphabet& sigma, CompileReport* report) {
  if (!free_vars(phi).empty()) throw InputError("compile expects a sentence");
  return compile_rec(phi, ExtAlphabet(sigma, {}), report);
}

std::vector<Wfo> sum_normal_form_summands(const Wfo& phi) {
  switch (phi->kind) {
    case WfoKind::kZero: return {};
    case WfoKind::kProd: return {phi};
    case WfoKind::kPlus: {
      auto out = sum_normal_form_summands(phi->lhs);
      auto rhs = sum_normal_form_summands(phi->rhs);
      out.insert(out.end(), rhs.begin(), rhs.end());
      return out;
    }
    case WfoKind::kIte: {
      std::vector<Wfo> out;
      for (const Wfo& s : sum_normal_form_summands(phi->lhs)) out.push_back(wfo::ite(phi->cond, s, wfo::zero()));
      const Fo neg = fo::neg(phi->cond);
      for (const Wfo& s : sum_normal_form_summands(phi->rhs)) out.push_back(wfo::ite(neg, s, wfo::zero()));
      return out;
    }
    case WfoKind::kSum: throw InputError("sum normal form is defined for formulas without sum over variables");
  }
  return {};
}

Wfo rewrite_sum_normal_form(const Wfo& phi) { return wfo::plus_all(sum_normal_form_summands(phi)); }

}  // namespace wfoc
