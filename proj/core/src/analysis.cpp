#include "wfoc/analysis.hpp"

#include "wfoc/error.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <unordered_map>

namespace wfoc {

namespace {

std::uint64_t sat_add(std::uint64_t x, std::uint64_t y) {
  const std::uint64_t s = x + y;
  return s < x ? std::numeric_limits<std::uint64_t>::max() : s;
}

void check_state(const Nfa& a, State q) {
  if (q >= a.num_states()) throw InputError("unknown state id " + std::to_string(q));
}

void check_word(const Nfa& a, std::span<const Letter> u) {
  for (Letter l : u) {
    if (l >= a.alphabet().size()) throw InputError("unknown letter id " + std::to_string(l));
  }
}

// back[i][s] is true iff q is reachable from s reading u[i..].
std::vector<std::vector<bool>> backward_table(const Nfa& a, State q, std::span<const Letter> u) {
  std::vector<std::vector<bool>> back(u.size() + 1, std::vector<bool>(a.num_states(), false));
  back[u.size()][q] = true;
  for (std::size_t i = u.size(); i-- > 0;) {
    for (const Transition& t : a.transitions()) {
      if (t.letter == u[i] && back[i + 1][t.dst]) back[i][t.src] = true;
    }
  }
  return back;
}

}  // namespace

std::vector<State> Run::states(const Nfa& a) const {
  std::vector<State> out{from};
  for (std::uint32_t t : transitions) out.push_back(a.transition(t).dst);
  return out;
}

WeightSeq Run::weights(const WeightedAutomaton& a) const {
  WeightSeq out;
  out.reserve(transitions.size());
  for (std::uint32_t t : transitions) out.push_back(a.weight(t));
  return out;
}

std::vector<Run> enumerate_runs(const Nfa& a, State p, State q, std::span<const Letter> u) {
  check_state(a, p);
  check_state(a, q);
  check_word(a, u);
  std::vector<Run> runs;
  const auto back = backward_table(a, q, u);
  if (!back[0][p]) return runs;
  Run current{p, q, {}};
  // Iterative DFS; choice[i] indexes successors at depth i.
  std::vector<std::size_t> choice(u.size() + 1, 0);
  std::vector<State> at(u.size() + 1, p);
  std::size_t depth = 0;
  if (u.empty()) {
    runs.push_back(current);
    return runs;
  }
  while (true) {
    auto succ = a.successors(at[depth], u[depth]);
    bool advanced = false;
    while (choice[depth] < succ.size()) {
      const Edge e = succ[choice[depth]++];
      if (!back[depth + 1][e.dst]) continue;
      current.transitions.push_back(e.index);
      if (depth + 1 == u.size()) {
        runs.push_back(current);
        current.transitions.pop_back();
        continue;
      }
      at[depth + 1] = e.dst;
      choice[depth + 1] = 0;
      ++depth;
      advanced = true;
      break;
    }
    if (advanced) continue;
    if (depth == 0) break;
    --depth;
    current.transitions.pop_back();
  }
  return runs;
}

std::vector<Run> enumerate_accepting_runs(const Nfa& a, std::span<const Letter> u) {
  std::vector<Run> out;
  for (State p : a.initial()) {
    for (State q : a.final()) {
      auto runs = enumerate_runs(a, p, q, u);
      out.insert(out.end(), runs.begin(), runs.end());
    }
  }
  return out;
}

namespace {

Multiset semantics_from(const WeightedAutomaton& a, const std::vector<State>& sources,
                        const std::vector<State>& targets, std::span<const Letter> u) {
  const Nfa& n = a.nfa();
  std::vector<Multiset> cur(n.num_states());
  for (State p : sources) cur[p].add({});
  for (Letter l : u) {
    std::vector<Multiset> next(n.num_states());
    for (State s = 0; s < n.num_states(); ++s) {
      if (cur[s].empty()) continue;
      for (const Edge& e : n.successors(s, l)) next[e.dst].merge(cur[s].append(a.weight(e.index)));
    }
    cur = std::move(next);
  }
  Multiset out;
  for (State q : targets) out.merge(cur[q]);
  return out;
}

std::vector<std::uint64_t> count_from(const Nfa& a, const std::vector<State>& sources, std::span<const Letter> u) {
  std::vector<std::uint64_t> cur(a.num_states(), 0);
  for (State p : sources) cur[p] = sat_add(cur[p], 1);
  for (Letter l : u) {
    std::vector<std::uint64_t> next(a.num_states(), 0);
    for (State s = 0; s < a.num_states(); ++s) {
      if (cur[s] == 0) continue;
      for (const Edge& e : a.successors(s, l)) next[e.dst] = sat_add(next[e.dst], cur[s]);
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

Multiset abstract_semantics_between(const WeightedAutomaton& a, State p, State q, std::span<const Letter> u) {
  check_state(a.nfa(), p);
  check_state(a.nfa(), q);
  check_word(a.nfa(), u);
  return semantics_from(a, {p}, {q}, u);
}

Multiset abstract_semantics(const WeightedAutomaton& a, std::span<const Letter> u) {
  if (u.empty()) throw InputError("abstract semantics is defined on non-empty words only");
  check_word(a.nfa(), u);
  return semantics_from(a, a.nfa().initial(), a.nfa().final(), u);
}

std::uint64_t count_runs_between(const Nfa& a, State p, State q, std::span<const Letter> u) {
  check_state(a, p);
  check_state(a, q);
  check_word(a, u);
  return count_from(a, {p}, u)[q];
}

std::uint64_t count_accepting_runs(const Nfa& a, std::span<const Letter> u) {
  check_word(a, u);
  const auto counts = count_from(a, a.initial(), u);
  std::uint64_t total = 0;
  for (State q : a.final()) total = sat_add(total, counts[q]);
  return total;
}

bool accepts_between(const Nfa& a, State p, State q, std::span<const Letter> u) {
  check_state(a, p);
  check_state(a, q);
  check_word(a, u);
  std::vector<bool> cur(a.num_states(), false);
  cur[p] = true;
  for (Letter l : u) {
    std::vector<bool> next(a.num_states(), false);
    bool any = false;
    for (State s = 0; s < a.num_states(); ++s) {
      if (!cur[s]) continue;
      for (const Edge& e : a.successors(s, l)) next[e.dst] = any = true;
    }
    if (!any) return false;
    cur = std::move(next);
  }
  return cur[q];
}

bool accepts(const Nfa& a, std::span<const Letter> u) {
  check_word(a, u);
  std::vector<bool> cur(a.num_states(), false);
  for (State p : a.initial()) cur[p] = true;
  for (Letter l : u) {
    std::vector<bool> next(a.num_states(), false);
    for (State s = 0; s < a.num_states(); ++s) {
      if (!cur[s]) continue;
      for (const Edge& e : a.successors(s, l)) next[e.dst] = true;
    }
    cur = std::move(next);
  }
  return std::any_of(a.final().begin(), a.final().end(), [&](State q) { return cur[q]; });
}

SccDecomposition scc_decompose(const Nfa& a) {
  const std::size_t n = a.num_states();
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0), tarjan_id(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<State> stack;
  std::uint32_t next_index = 0;
  std::uint32_t found = 0;
  // Explicit recursion stack of (state, position in outgoing list).
  std::vector<std::pair<State, std::size_t>> call;
  for (State root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      auto out = a.outgoing(v);
      if (pos < out.size()) {
        const State w = a.transition(out[pos++]).dst;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const State done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        State w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          tarjan_id[w] = found;
        } while (w != done);
        ++found;
      }
    }
  }
  SccDecomposition d;
  d.num_components = found;
  d.component.resize(n);
  d.members.assign(found, {});
  // Tarjan emits sinks first; reverse for a topological numbering.
  for (State q = 0; q < n; ++q) {
    d.component[q] = found - 1 - tarjan_id[q];
    d.members[d.component[q]].push_back(q);
  }
  for (const Transition& t : a.transitions()) {
    if (d.component[t.src] != d.component[t.dst]) d.dag_edges.emplace_back(d.component[t.src], d.component[t.dst]);
  }
  std::sort(d.dag_edges.begin(), d.dag_edges.end());
  d.dag_edges.erase(std::unique(d.dag_edges.begin(), d.dag_edges.end()), d.dag_edges.end());
  return d;
}

std::string AmbiguityWitness::describe(const Nfa& a) const {
  auto path = [&](const Run& r) {
    std::string s;
    const auto st = r.states(a);
    for (std::size_t i = 0; i < st.size(); ++i) {
      if (i > 0) s += " -" + a.alphabet().name(word[i - 1]) + "-> ";
      s += a.state_name(st[i]);
    }
    return s;
  };
  return "word '" + a.alphabet().format(word) + "' has runs " + path(first) + " and " + path(second);
}

namespace {

// Search for two distinct same-label runs in the self-product restricted to
// allowed transition pairs, from source pairs to target pairs.
class PairSearch {
 public:
  using Key = std::uint64_t;

  PairSearch(const Nfa& a, std::function<bool(std::uint32_t, std::uint32_t)> allowed)
      : a_(a), n_(a.num_states()), allowed_(std::move(allowed)) {}

  std::optional<AmbiguityWitness> run(const std::vector<std::pair<State, State>>& sources,
                                      const std::function<bool(State, State)>& is_target) {
    std::deque<Key> queue;
    for (auto [s, t] : sources) {
      const Key k = key(s, t);
      if (parent_.emplace(k, Parent{k, 0, 0, true}).second) queue.push_back(k);
    }
    while (!queue.empty()) {
      const Key k = queue.front();
      queue.pop_front();
      const State s = first(k), t = second(k);
      for (std::uint32_t i : a_.outgoing(s)) {
        const Transition& ti = a_.transition(i);
        for (const Edge& e : a_.successors(t, ti.letter)) {
          if (!allowed_(i, e.index)) continue;
          const Key next = key(ti.dst, e.dst);
          edges_.push_back(PairEdge{k, next, i, e.index});
          if (parent_.emplace(next, Parent{k, i, e.index, false}).second) queue.push_back(next);
        }
      }
    }
    // Backward closure towards targets; next_[x] is an edge index leading on.
    std::unordered_map<Key, std::vector<std::size_t>> incoming;
    for (std::size_t ei = 0; ei < edges_.size(); ++ei) incoming[edges_[ei].to].push_back(ei);
    std::unordered_map<Key, std::int64_t> next;
    for (const auto& entry : parent_) {
      if (is_target(first(entry.first), second(entry.first))) {
        next.emplace(entry.first, -1);
        queue.push_back(entry.first);
      }
    }
    while (!queue.empty()) {
      const Key k = queue.front();
      queue.pop_front();
      auto it = incoming.find(k);
      if (it == incoming.end()) continue;
      for (std::size_t ei : it->second) {
        if (next.emplace(edges_[ei].from, static_cast<std::int64_t>(ei)).second) queue.push_back(edges_[ei].from);
      }
    }
    // Deterministic choice: smallest edge index crossing the diagonal.
    for (std::size_t ei = 0; ei < edges_.size(); ++ei) {
      const PairEdge& e = edges_[ei];
      if (!next.count(e.to)) continue;
      if (first(e.from) == second(e.from) && first(e.to) == second(e.to)) continue;
      return build(ei, next);
    }
    return std::nullopt;
  }

 private:
  struct Parent {
    Key prev;
    std::uint32_t t1, t2;
    bool root;
  };
  struct PairEdge {
    Key from, to;
    std::uint32_t t1, t2;
  };

  Key key(State s, State t) const { return static_cast<Key>(s) * n_ + t; }
  State first(Key k) const { return static_cast<State>(k / n_); }
  State second(Key k) const { return static_cast<State>(k % n_); }

  AmbiguityWitness build(std::size_t ei, const std::unordered_map<Key, std::int64_t>& next) const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> steps;
    for (Key k = edges_[ei].from;;) {
      const Parent& p = parent_.at(k);
      if (p.root) break;
      steps.emplace_back(p.t1, p.t2);
      k = p.prev;
    }
    std::reverse(steps.begin(), steps.end());
    steps.emplace_back(edges_[ei].t1, edges_[ei].t2);
    for (Key k = edges_[ei].to; next.at(k) >= 0;) {
      const PairEdge& e = edges_[static_cast<std::size_t>(next.at(k))];
      steps.emplace_back(e.t1, e.t2);
      k = e.to;
    }
    AmbiguityWitness w;
    w.first.from = a_.transition(steps.front().first).src;
    w.second.from = a_.transition(steps.front().second).src;
    for (auto [t1, t2] : steps) {
      w.word.push_back(a_.transition(t1).letter);
      w.first.transitions.push_back(t1);
      w.second.transitions.push_back(t2);
    }
    w.first.to = a_.transition(steps.back().first).dst;
    w.second.to = a_.transition(steps.back().second).dst;
    return w;
  }

  const Nfa& a_;
  std::uint64_t n_;
  std::function<bool(std::uint32_t, std::uint32_t)> allowed_;
  std::unordered_map<Key, Parent> parent_;
  std::vector<PairEdge> edges_;
};

}  // namespace

std::optional<AmbiguityWitness> ambiguity_witness(const Nfa& a) {
  std::vector<std::pair<State, State>> sources;
  for (State p : a.initial()) {
    for (State q : a.initial()) sources.emplace_back(p, q);
  }
  PairSearch search(a, [](std::uint32_t, std::uint32_t) { return true; });
  return search.run(sources, [&](State s, State t) { return a.is_final(s) && a.is_final(t); });
}

std::optional<AmbiguityWitness> ambiguity_witness_between(const Nfa& a, State p, State q) {
  check_state(a, p);
  check_state(a, q);
  PairSearch search(a, [](std::uint32_t, std::uint32_t) { return true; });
  return search.run({{p, p}}, [&](State s, State t) { return s == q && t == q; });
}

std::optional<AmbiguityWitness> scc_ambiguity_witness(const Nfa& a) {
  const SccDecomposition scc = scc_decompose(a);
  auto internal = [&](std::uint32_t i) {
    const Transition& t = a.transition(i);
    return scc.same(t.src, t.dst);
  };
  std::vector<std::pair<State, State>> sources;
  for (State p = 0; p < a.num_states(); ++p) sources.emplace_back(p, p);
  PairSearch search(a, [&](std::uint32_t i, std::uint32_t j) { return internal(i) && internal(j); });
  return search.run(sources, [](State s, State t) { return s == t; });
}

bool is_unambiguous(const Nfa& a) { return !ambiguity_witness(a).has_value(); }
bool is_unambiguous_between(const Nfa& a, State p, State q) { return !ambiguity_witness_between(a, p, q); }
bool is_scc_unambiguous(const Nfa& a) { return !scc_ambiguity_witness(a).has_value(); }

std::string to_string(AmbiguityClass c) {
  switch (c) {
    case AmbiguityClass::kUnambiguous: return "unambiguous";
    case AmbiguityClass::kFinitely: return "finite";
    case AmbiguityClass::kPolynomially: return "polynomial";
    case AmbiguityClass::kExponentially: return "exponential";
  }
  return "?";
}

std::optional<bool> is_finitely_ambiguous(const Nfa& a, std::size_t max_triples) {
  const SccDecomposition scc = scc_decompose(a);
  const std::uint64_t n = a.num_states();
  std::size_t budget = max_triples;
  for (State p = 0; p < n; ++p) {
    const auto fwd = [&] {
      std::vector<bool> seen(n, false);
      std::vector<State> stack{p};
      seen[p] = true;
      while (!stack.empty()) {
        State s = stack.back();
        stack.pop_back();
        for (std::uint32_t i : a.outgoing(s)) {
          State d = a.transition(i).dst;
          if (!seen[d]) {
            seen[d] = true;
            stack.push_back(d);
          }
        }
      }
      return seen;
    }();
    for (State q = 0; q < n; ++q) {
      if (q == p || !fwd[q]) continue;
      // Triples (s1, s2, s3): s1 cycles in [p], s2 travels p -> q, s3 cycles in [q].
      auto key = [&](State x, State y, State z) { return (static_cast<std::uint64_t>(x) * n + y) * n + z; };
      std::unordered_map<std::uint64_t, bool> seen;
      std::deque<std::array<State, 3>> queue;
      queue.push_back({p, p, q});
      seen[key(p, p, q)] = true;
      bool found = false;
      while (!queue.empty() && !found) {
        auto [s1, s2, s3] = queue.front();
        queue.pop_front();
        for (std::uint32_t i : a.outgoing(s1)) {
          const Transition& t1 = a.transition(i);
          if (!scc.same(t1.dst, p)) continue;
          for (const Edge& e2 : a.successors(s2, t1.letter)) {
            for (const Edge& e3 : a.successors(s3, t1.letter)) {
              if (!scc.same(e3.dst, q)) continue;
              if (t1.dst == p && e2.dst == q && e3.dst == q) {
                found = true;
                break;
              }
              if (seen.emplace(key(t1.dst, e2.dst, e3.dst), true).second) {
                if (budget-- == 0) return std::nullopt;
                queue.push_back({t1.dst, e2.dst, e3.dst});
              }
            }
            if (found) break;
          }
          if (found) break;
        }
      }
      if (found) return false;
    }
  }
  return true;
}

AmbiguityReport classify_ambiguity(const Nfa& input) {
  const Nfa a = is_trim(input) ? input : trim(input);
  AmbiguityReport report;
  if (is_unambiguous(a)) return report;
  if (!is_scc_unambiguous(a)) {
    report.cls = AmbiguityClass::kExponentially;
    return report;
  }
  const auto finite = is_finitely_ambiguous(a);
  if (!finite) {
    report.cls = AmbiguityClass::kPolynomially;
    report.determined = false;
  } else {
    report.cls = *finite ? AmbiguityClass::kFinitely : AmbiguityClass::kPolynomially;
  }
  return report;
}

std::uint64_t ambiguity_degree_bounded(const Nfa& a, std::size_t max_length) {
  const std::size_t sigma = a.alphabet().size();
  std::uint64_t best = 0;
  if (sigma == 0 || max_length == 0) return 0;
  // Depth-first over words with a count vector per prefix.
  std::vector<std::vector<std::uint64_t>> level(max_length + 1, std::vector<std::uint64_t>(a.num_states(), 0));
  for (State p : a.initial()) level[0][p] = sat_add(level[0][p], 1);
  std::vector<Letter> letter(max_length + 1, 0);
  std::size_t depth = 0;
  letter[0] = 0;
  while (true) {
    if (letter[depth] == sigma) {
      if (depth == 0) break;
      --depth;
      ++letter[depth];
      continue;
    }
    auto& next = level[depth + 1];
    std::fill(next.begin(), next.end(), 0);
    bool alive = false;
    for (State s = 0; s < a.num_states(); ++s) {
      if (level[depth][s] == 0) continue;
      for (const Edge& e : a.successors(s, letter[depth])) {
        next[e.dst] = sat_add(next[e.dst], level[depth][s]);
        alive = true;
      }
    }
    std::uint64_t total = 0;
    for (State q : a.final()) total = sat_add(total, next[q]);
    best = std::max(best, total);
    if (alive && depth + 1 < max_length) {
      ++depth;
      letter[depth] = 0;
    } else {
      ++letter[depth];
    }
  }
  return best;
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

class BoolMatrix {
 public:
  explicit BoolMatrix(std::size_t n) : n_(n), words_((n + 63) / 64) {}
  std::size_t words() const { return words_; }

  std::vector<std::uint64_t> zero() const { return std::vector<std::uint64_t>(n_ * words_, 0); }
  void set(std::vector<std::uint64_t>& m, std::size_t i, std::size_t j) const {
    m[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
  }
  std::vector<std::uint64_t> mul(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) const {
    std::vector<std::uint64_t> out(n_ * words_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      std::uint64_t* row = out.data() + i * words_;
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = x[i * words_ + w];
        while (bits) {
          const std::size_t j = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
          bits &= bits - 1;
          const std::uint64_t* src = y.data() + j * words_;
          for (std::size_t k = 0; k < words_; ++k) row[k] |= src[k];
        }
      }
    }
    return out;
  }

 private:
  std::size_t n_;
  std::size_t words_;
};

}  // namespace

std::optional<std::size_t> aperiodicity_index(const Nfa& a, std::size_t max_elements) {
  const std::size_t n = a.num_states();
  const std::size_t sigma = a.alphabet().size();
  if (sigma == 0) return 1;
  BoolMatrix mat(n);
  std::vector<std::vector<std::uint64_t>> gens(sigma, mat.zero());
  for (const Transition& t : a.transitions()) mat.set(gens[t.letter], t.src, t.dst);

  std::vector<std::vector<std::uint64_t>> elements;
  std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, VecHash> index;
  const std::size_t word_budget = std::size_t{1} << 25;
  auto insert = [&](std::vector<std::uint64_t> m) {
    if (index.count(m)) return;
    if (elements.size() >= max_elements || (elements.size() + 1) * m.size() > word_budget) {
      throw LimitError("transition semigroup exceeds " + std::to_string(elements.size()) + " elements");
    }
    index.emplace(m, static_cast<std::uint32_t>(elements.size()));
    elements.push_back(std::move(m));
  };
  for (const auto& g : gens) insert(g);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& g : gens) insert(mat.mul(elements[i], g));
  }

  std::size_t result = 1;
  // Powers of e are looked up in the closed semigroup.
  for (std::size_t i = 0; i < elements.size(); ++i) {
    std::vector<std::uint32_t> seq{static_cast<std::uint32_t>(i)};
    std::unordered_map<std::uint32_t, std::size_t> position{{static_cast<std::uint32_t>(i), 1}};
    while (true) {
      const std::uint32_t next = index.at(mat.mul(elements[seq.back()], elements[i]));
      const std::size_t k = seq.size();  // seq.back() = e^k, next = e^(k+1)
      if (next == seq.back()) {
        result = std::max(result, k);
        break;
      }
      if (position.count(next)) return std::nullopt;
      position.emplace(next, k + 1);
      seq.push_back(next);
    }
  }
  return result;
}

bool is_aperiodic(const Nfa& a) { return aperiodicity_index(a).has_value(); }

std::vector<bool> reachable_states(const Nfa& a) {
  std::vector<bool> seen(a.num_states(), false);
  std::vector<State> stack;
  for (State p : a.initial()) {
    if (!seen[p]) {
      seen[p] = true;
      stack.push_back(p);
    }
  }
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (std::uint32_t i : a.outgoing(s)) {
      State d = a.transition(i).dst;
      if (!seen[d]) {
        seen[d] = true;
        stack.push_back(d);
      }
    }
  }
  return seen;
}

std::vector<bool> coreachable_states(const Nfa& a) {
  std::vector<bool> seen(a.num_states(), false);
  std::vector<State> stack;
  for (State q : a.final()) {
    if (!seen[q]) {
      seen[q] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (std::uint32_t i : a.incoming(s)) {
      State d = a.transition(i).src;
      if (!seen[d]) {
        seen[d] = true;
        stack.push_back(d);
      }
    }
  }
  return seen;
}

namespace {

struct Restriction {
  Nfa nfa;
  std::vector<std::uint32_t> kept_transitions;  // new index -> old index
};

Restriction restrict_impl(const Nfa& a, const std::vector<bool>& keep) {
  std::vector<State> renumber(a.num_states(), 0);
  std::vector<std::string> names;
  for (State q = 0; q < a.num_states(); ++q) {
    if (keep[q]) {
      renumber[q] = static_cast<State>(names.size());
      names.push_back(a.state_name(q));
    }
  }
  auto map_set = [&](const std::vector<State>& set) {
    std::vector<State> out;
    for (State q : set) {
      if (keep[q]) out.push_back(renumber[q]);
    }
    return out;
  };
  Restriction r;
  std::vector<Transition> ts;
  for (std::uint32_t i = 0; i < a.transitions().size(); ++i) {
    const Transition& t = a.transition(i);
    if (keep[t.src] && keep[t.dst]) {
      ts.push_back(Transition{renumber[t.src], t.letter, renumber[t.dst]});
      r.kept_transitions.push_back(i);
    }
  }
  std::map<std::string, std::vector<State>> extra;
  for (const auto& [name, set] : a.extra_sets()) extra[name] = map_set(set);
  // Order-preserving renumbering keeps the transition order, so indices align.
  r.nfa = Nfa(a.alphabet(), std::move(names), std::move(ts), map_set(a.initial()), map_set(a.final()),
              std::move(extra));
  return r;
}

}  // namespace

Nfa restrict_states(const Nfa& a, const std::vector<bool>& keep) { return restrict_impl(a, keep).nfa; }

WeightedAutomaton restrict_states(const WeightedAutomaton& a, const std::vector<bool>& keep) {
  Restriction r = restrict_impl(a.nfa(), keep);
  std::vector<Weight> weights;
  weights.reserve(r.kept_transitions.size());
  for (std::uint32_t i : r.kept_transitions) weights.push_back(a.weight(i));
  return WeightedAutomaton(std::move(r.nfa), std::move(weights));
}

namespace {

std::vector<bool> useful(const Nfa& a) {
  auto keep = reachable_states(a);
  const auto co = coreachable_states(a);
  for (State q = 0; q < a.num_states(); ++q) keep[q] = keep[q] && co[q];
  return keep;
}

}  // namespace

Nfa trim(const Nfa& a) { return restrict_states(a, useful(a)); }
WeightedAutomaton trim(const WeightedAutomaton& a) { return restrict_states(a, useful(a.nfa())); }

bool is_trim(const Nfa& a) {
  const auto keep = useful(a);
  return std::all_of(keep.begin(), keep.end(), [](bool b) { return b; });
}

namespace {

void require_same_alphabet(const Nfa& a, const Nfa& b) {
  if (!(a.alphabet() == b.alphabet())) throw InputError("alphabet mismatch between automata");
}

}  // namespace

ProductAutomaton product(const Nfa& a, const Nfa& b, const AcceptRule& accept) {
  require_same_alphabet(a, b);
  ProductAutomaton out;
  std::map<std::pair<State, State>, State> id;
  std::vector<Transition> ts;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> origin;
  auto intern = [&](State p, State q) {
    auto [it, inserted] = id.emplace(std::make_pair(p, q), static_cast<State>(out.pairs.size()));
    if (inserted) out.pairs.emplace_back(p, q);
    return it->second;
  };
  std::vector<State> initial;
  for (State p : a.initial()) {
    for (State q : b.initial()) initial.push_back(intern(p, q));
  }
  for (std::size_t i = 0; i < out.pairs.size(); ++i) {
    const auto [p, q] = out.pairs[i];
    for (Letter l = 0; l < a.alphabet().size(); ++l) {
      for (const Edge& ea : a.successors(p, l)) {
        for (const Edge& eb : b.successors(q, l)) {
          const State d = intern(ea.dst, eb.dst);
          ts.push_back(Transition{static_cast<State>(i), l, d});
          origin.emplace_back(ea.index, eb.index);
        }
      }
    }
  }
  std::vector<State> final;
  for (State s = 0; s < out.pairs.size(); ++s) {
    if (accept(a.is_final(out.pairs[s].first), b.is_final(out.pairs[s].second))) final.push_back(s);
  }
  // ts is generated in (src, letter, dst-of-a, dst-of-b) order; sort origin alongside.
  std::vector<std::size_t> order(ts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return ts[x] < ts[y]; });
  std::vector<Transition> sorted_ts;
  for (std::size_t i : order) {
    sorted_ts.push_back(ts[i]);
    out.origin.push_back(origin[i]);
  }
  out.nfa = Nfa(a.alphabet(), std::vector<std::string>(out.pairs.size()), std::move(sorted_ts), std::move(initial),
                std::move(final));
  return out;
}

WeightedAutomaton product(const WeightedAutomaton& a, const WeightedAutomaton& b, const WeightRule& pick,
                          const AcceptRule& accept) {
  ProductAutomaton p = product(a.nfa(), b.nfa(), accept);
  std::vector<Weight> weights;
  weights.reserve(p.origin.size());
  for (auto [i, j] : p.origin) weights.push_back(pick(a.weight(i), b.weight(j)));
  return WeightedAutomaton(std::move(p.nfa), std::move(weights));
}

Nfa disjoint_union(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a, b);
  const State shift = static_cast<State>(a.num_states());
  std::vector<Transition> ts = a.transitions();
  for (const Transition& t : b.transitions()) ts.push_back(Transition{t.src + shift, t.letter, t.dst + shift});
  std::vector<State> initial = a.initial(), final = a.final();
  for (State q : b.initial()) initial.push_back(q + shift);
  for (State q : b.final()) final.push_back(q + shift);
  return Nfa(a.alphabet(), std::vector<std::string>(a.num_states() + b.num_states()), std::move(ts),
             std::move(initial), std::move(final));
}

WeightedAutomaton disjoint_union(const WeightedAutomaton& a, const WeightedAutomaton& b) {
  // b's transitions all sort after a's, so weights concatenate in order.
  Nfa u = disjoint_union(a.nfa(), b.nfa());
  std::vector<Weight> weights = a.weights();
  weights.insert(weights.end(), b.weights().begin(), b.weights().end());
  return WeightedAutomaton(std::move(u), std::move(weights));
}

std::vector<Word> all_words(std::size_t alphabet_size, std::size_t min_length, std::size_t max_length) {
  std::vector<Word> out;
  if (alphabet_size == 0) {
    if (min_length == 0) out.emplace_back();
    return out;
  }
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 0; len <= max_length; ++len) {
    if (len >= min_length) out.insert(out.end(), layer.begin(), layer.end());
    if (len == max_length) break;
    std::vector<Word> next;
    next.reserve(layer.size() * alphabet_size);
    for (const Word& w : layer) {
      for (Letter l = 0; l < alphabet_size; ++l) {
        next.push_back(w);
        next.back().push_back(l);
      }
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace wfoc
