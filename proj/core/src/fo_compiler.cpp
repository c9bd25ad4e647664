#include "wfoc/fo_compiler.hpp"

#include "wfoc/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

namespace wfoc {

ClassifierDfa::ClassifierDfa(ExtAlphabet ext, std::vector<State> next, std::vector<Verdict> verdicts, State initial)
    : ext_(std::move(ext)), next_(std::move(next)), verdicts_(std::move(verdicts)), initial_(initial) {
  if (next_.size() != verdicts_.size() * ext_.size()) throw InputError("classifier transition table has wrong size");
  if (initial_ >= verdicts_.size()) throw InputError("classifier initial state out of range");
  for (State q : next_) {
    if (q >= verdicts_.size()) throw InputError("classifier successor out of range");
  }
}

State ClassifierDfa::run(std::span<const Letter> ext_word) const {
  State q = initial_;
  for (Letter a : ext_word) {
    if (a >= ext_.size()) throw InputError("letter outside the extended alphabet");
    q = next(q, a);
  }
  return q;
}

Nfa ClassifierDfa::to_nfa() const {
  std::vector<Transition> ts;
  ts.reserve(next_.size());
  std::vector<State> f, g;
  for (State q = 0; q < num_states(); ++q) {
    for (Letter a = 0; a < ext_.size(); ++a) ts.push_back({q, a, next(q, a)});
    if (verdicts_[q] == Verdict::kHolds) f.push_back(q);
    if (verdicts_[q] == Verdict::kFails) g.push_back(q);
  }
  return Nfa(ext_.alphabet(), std::vector<std::string>(num_states()), std::move(ts), {initial_}, std::move(f),
             {{"G", std::move(g)}});
}

namespace {

// Explores the states reachable from `init` by BFS over keys, interning each
// key as a state. `succ` maps (key, letter) to the successor key.
template <class Key>
ClassifierDfa explore(const ExtAlphabet& ext, const Key& init, const std::function<Key(const Key&, Letter)>& succ,
                      const std::function<Verdict(const Key&)>& verdict) {
  std::map<Key, State> ids;
  std::vector<const Key*> keys;
  std::vector<State> next;
  std::vector<Verdict> verdicts;
  auto intern = [&](const Key& k) {
    auto [it, fresh] = ids.emplace(k, static_cast<State>(keys.size()));
    if (fresh) {
      keys.push_back(&it->first);
      verdicts.push_back(verdict(k));
    }
    return it->second;
  };
  intern(init);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (Letter a = 0; a < ext.size(); ++a) {
      const Key k = *keys[i];
      next.push_back(intern(succ(k, a)));
    }
  }
  return ClassifierDfa(ext, std::move(next), std::move(verdicts), 0);
}

// Atom classifiers track which variables have fired plus atom-specific data.
struct AtomSpec {
  std::uint32_t init = 0;
  std::function<std::uint32_t(std::uint32_t data, Letter base, std::uint32_t mask)> step;
  std::function<bool(std::uint32_t data)> truth;
};

constexpr std::uint32_t kSinkFired = ~std::uint32_t{0};

ClassifierDfa atom_dfa(const ExtAlphabet& ext, const AtomSpec& spec) {
  using Key = std::pair<std::uint32_t, std::uint32_t>;  // (fired mask, data); fired = kSinkFired is the sink
  const Key sink{kSinkFired, 0};
  return explore<Key>(
      ext, Key{0, spec.init},
      [&](const Key& k, Letter a) {
        const std::uint32_t m = ext.mask_of(a);
        if (k.first == kSinkFired || (k.first & m) != 0) return sink;
        return Key{k.first | m, spec.step ? spec.step(k.second, ext.base_of(a), m) : k.second};
      },
      [&](const Key& k) {
        if (k.first != ext.full_mask()) return Verdict::kReject;
        return spec.truth(k.second) ? Verdict::kHolds : Verdict::kFails;
      });
}

std::uint32_t bit(const ExtAlphabet& ext, const std::string& v) { return std::uint32_t{1} << ext.var_at(v); }

ClassifierDfa constant_dfa(const ExtAlphabet& ext, bool value) {
  AtomSpec spec;
  spec.truth = [value](std::uint32_t) { return value; };
  return atom_dfa(ext, spec);
}

ClassifierDfa letter_dfa(const ExtAlphabet& ext, const std::string& letter, const std::string& x) {
  const std::uint32_t bx = bit(ext, x);
  const auto target = ext.base().find(letter);
  AtomSpec spec;
  // data: 0 before the mark, 1 letter matches, 2 letter differs
  spec.step = [=](std::uint32_t data, Letter b, std::uint32_t m) -> std::uint32_t {
    if ((m & bx) == 0) return data;
    return target && *target == b ? 1 : 2;
  };
  spec.truth = [](std::uint32_t data) { return data == 1; };
  return atom_dfa(ext, spec);
}

ClassifierDfa order_dfa(const ExtAlphabet& ext, FoKind kind, const std::string& x, const std::string& y) {
  if (x == y) return constant_dfa(ext, kind != FoKind::kLt);
  const std::uint32_t bx = bit(ext, x), by = bit(ext, y);
  AtomSpec spec;
  // data: 0 neither seen, 1 x strictly first, 2 y strictly first, 3 same position
  spec.step = [=](std::uint32_t data, Letter, std::uint32_t m) -> std::uint32_t {
    if (data != 0) return data;
    const bool hx = (m & bx) != 0, hy = (m & by) != 0;
    if (hx && hy) return 3;
    if (hx) return 1;
    if (hy) return 2;
    return 0;
  };
  spec.truth = [kind](std::uint32_t data) {
    switch (kind) {
      case FoKind::kLeq: return data == 1 || data == 3;
      case FoKind::kLt: return data == 1;
      default: return data == 3;
    }
  };
  return atom_dfa(ext, spec);
}

ClassifierDfa run_dfa(const ExtAlphabet& ext, const FoNode& atom) {
  const Nfa& a = atom.run->automaton;
  const std::uint32_t blo = atom.x.empty() ? 0 : bit(ext, atom.x);
  const std::uint32_t bhi = atom.y.empty() ? 0 : bit(ext, atom.y);
  std::vector<std::optional<Letter>> translate(ext.base().size());
  for (Letter b = 0; b < ext.base().size(); ++b) translate[b] = a.alphabet().find(ext.base().name(b));

  // data: 0 before lo, 1 done false, 2 done true, 3 + i active with subset i
  auto subsets = std::make_shared<std::vector<std::vector<State>>>();
  auto subset_ids = std::make_shared<std::map<std::vector<State>, std::uint32_t>>();
  auto active = [=](std::vector<State> s) {
    auto [it, fresh] = subset_ids->emplace(s, static_cast<std::uint32_t>(subsets->size()));
    if (fresh) subsets->push_back(std::move(s));
    return 3 + it->second;
  };
  auto contains_q = [=, q = atom.q](std::uint32_t data) {
    const auto& s = (*subsets)[data - 3];
    return std::binary_search(s.begin(), s.end(), q);
  };

  AtomSpec spec;
  spec.init = blo == 0 ? active({atom.p}) : 0;
  spec.step = [=, &a, p = atom.p, q = atom.q](std::uint32_t data, Letter b, std::uint32_t m) -> std::uint32_t {
    if ((m & bhi) != 0) {
      if (data == 0) return p == q ? 2 : 1;
      if (data >= 3) return contains_q(data) ? 2 : 1;
    }
    if ((m & blo) != 0) return data == 0 ? active({p}) : data;
    if (data < 3) return data;
    std::vector<State> out;
    if (translate[b]) {
      for (State s : (*subsets)[data - 3]) {
        for (const Edge& e : a.successors(s, *translate[b])) out.push_back(e.dst);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return active(std::move(out));
  };
  spec.truth = [=](std::uint32_t data) { return data >= 3 ? contains_q(data) : data == 2; };
  return atom_dfa(ext, spec);
}

enum class BoolOp { kAnd, kOr, kImplies };

ClassifierDfa combine(const ClassifierDfa& l, const ClassifierDfa& r, BoolOp op) {
  using Key = std::pair<State, State>;
  const ExtAlphabet& ext = l.ext();
  return explore<Key>(
      ext, Key{l.initial(), r.initial()},
      [&](const Key& k, Letter a) { return Key{l.next(k.first, a), r.next(k.second, a)}; },
      [&](const Key& k) {
        const Verdict vl = l.verdict(k.first), vr = r.verdict(k.second);
        if (vl == Verdict::kReject || vr == Verdict::kReject) return Verdict::kReject;
        const bool bl = vl == Verdict::kHolds, br = vr == Verdict::kHolds;
        bool v = false;
        switch (op) {
          case BoolOp::kAnd: v = bl && br; break;
          case BoolOp::kOr: v = bl || br; break;
          case BoolOp::kImplies: v = !bl || br; break;
        }
        return v ? Verdict::kHolds : Verdict::kFails;
      });
}

// ∃x over a body classifier on V ∪ {x} (x the last bit): the column of x is
// guessed, so the subset meets F iff some placement of x satisfies the body.
// Invalid V-encodings admit no valid placement and reach neither F nor G.
ClassifierDfa project_exists(const ClassifierDfa& body, const ExtAlphabet& ext) {
  using Key = std::pair<bool, std::vector<State>>;  // (still at ε, subset)
  const std::uint32_t xbit = std::uint32_t{1} << ext.num_vars();
  const ExtAlphabet& inner = body.ext();
  return explore<Key>(
      ext, Key{true, {body.initial()}},
      [&](const Key& k, Letter a) {
        const Letter b = ext.base_of(a);
        const std::uint32_t m = ext.mask_of(a);
        std::vector<State> out;
        out.reserve(2 * k.second.size());
        for (State s : k.second) {
          out.push_back(body.next(s, inner.letter(b, m)));
          out.push_back(body.next(s, inner.letter(b, m | xbit)));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return Key{false, std::move(out)};
      },
      [&](const Key& k) {
        // On ε no position exists; ε itself is valid only over V = ∅.
        if (k.first) return ext.num_vars() == 0 ? Verdict::kFails : Verdict::kReject;
        bool g = false;
        for (State s : k.second) {
          if (body.verdict(s) == Verdict::kHolds) return Verdict::kHolds;
          g = g || body.verdict(s) == Verdict::kFails;
        }
        return g ? Verdict::kFails : Verdict::kReject;
      });
}

ClassifierDfa compile(const Fo& f, const ExtAlphabet& ext) {
  switch (f->kind) {
    case FoKind::kTrue: return constant_dfa(ext, true);
    case FoKind::kFalse: return constant_dfa(ext, false);
    case FoKind::kLetter: return minimize(letter_dfa(ext, f->letter, f->x));
    case FoKind::kLeq:
    case FoKind::kLt:
    case FoKind::kEq: return minimize(order_dfa(ext, f->kind, f->x, f->y));
    case FoKind::kRun: return minimize(run_dfa(ext, *f));
    case FoKind::kNot: return negate(compile(f->lhs, ext));
    case FoKind::kAnd: return minimize(combine(compile(f->lhs, ext), compile(f->rhs, ext), BoolOp::kAnd));
    case FoKind::kOr: return minimize(combine(compile(f->lhs, ext), compile(f->rhs, ext), BoolOp::kOr));
    case FoKind::kImplies: return minimize(combine(compile(f->lhs, ext), compile(f->rhs, ext), BoolOp::kImplies));
    case FoKind::kExists:
    case FoKind::kForall: {
      if (ext.var_index(f->x)) throw ScopeError("quantifier rebinds variable '" + f->x + "'");
      const ExtAlphabet inner = ext.extend(f->x);
      if (f->kind == FoKind::kExists) return minimize(project_exists(compile(f->lhs, inner), ext));
      return negate(minimize(project_exists(negate(compile(f->lhs, inner)), ext)));
    }
  }
  throw InputError("unknown formula node");
}

}  // namespace

ClassifierDfa validity_dfa(const ExtAlphabet& ext) {
  // State = fired mask; the sink 2^|V| is materialized even when unreachable.
  const State sink = ext.full_mask() + 1;
  std::vector<State> next;
  std::vector<Verdict> verdicts;
  for (State q = 0; q <= sink; ++q) {
    verdicts.push_back(q == ext.full_mask() ? Verdict::kHolds : Verdict::kReject);
    for (Letter a = 0; a < ext.size(); ++a) {
      const std::uint32_t m = ext.mask_of(a);
      next.push_back(q == sink || (q & m) != 0 ? sink : (q | m));
    }
  }
  return ClassifierDfa(ext, std::move(next), std::move(verdicts), 0);
}

ClassifierDfa compile_fo(const Fo& f, const ExtAlphabet& ext) {
  for (const auto& v : free_vars(f)) ext.var_at(v);
  return compile(f, ext);
}

ClassifierDfa negate(const ClassifierDfa& d) {
  std::vector<Verdict> v = d.verdicts();
  for (Verdict& x : v) {
    if (x == Verdict::kHolds) {
      x = Verdict::kFails;
    } else if (x == Verdict::kFails) {
      x = Verdict::kHolds;
    }
  }
  std::vector<State> next;
  next.reserve(d.num_states() * d.ext().size());
  for (State q = 0; q < d.num_states(); ++q) {
    for (Letter a = 0; a < d.ext().size(); ++a) next.push_back(d.next(q, a));
  }
  return ClassifierDfa(d.ext(), std::move(next), std::move(v), d.initial());
}

ClassifierDfa minimize(const ClassifierDfa& d) {
  const std::size_t n = d.num_states(), sigma = d.ext().size();
  std::vector<std::uint32_t> cls(n);
  for (State q = 0; q < n; ++q) cls[q] = static_cast<std::uint32_t>(d.verdict(q));
  std::size_t num_classes = 0;
  while (true) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> sig_ids;
    std::vector<std::uint32_t> refined(n);
    for (State q = 0; q < n; ++q) {
      std::vector<std::uint32_t> sig;
      sig.reserve(sigma + 1);
      sig.push_back(cls[q]);
      for (Letter a = 0; a < sigma; ++a) sig.push_back(cls[d.next(q, a)]);
      refined[q] = sig_ids.emplace(std::move(sig), static_cast<std::uint32_t>(sig_ids.size())).first->second;
    }
    cls = std::move(refined);
    if (sig_ids.size() == num_classes) break;
    num_classes = sig_ids.size();
  }
  // Representative per class, then BFS renumbering from the initial class.
  std::vector<State> rep(num_classes, 0);
  for (State q = n; q-- > 0;) rep[cls[q]] = q;
  std::vector<std::int64_t> order(num_classes, -1);
  std::vector<std::uint32_t> queue{cls[d.initial()]};
  order[cls[d.initial()]] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Letter a = 0; a < sigma; ++a) {
      const std::uint32_t c = cls[d.next(rep[queue[i]], a)];
      if (order[c] < 0) {
        order[c] = static_cast<std::int64_t>(queue.size());
        queue.push_back(c);
      }
    }
  }
  std::vector<State> next;
  std::vector<Verdict> verdicts;
  next.reserve(queue.size() * sigma);
  for (std::uint32_t c : queue) {
    verdicts.push_back(d.verdict(rep[c]));
    for (Letter a = 0; a < sigma; ++a) next.push_back(static_cast<State>(order[cls[d.next(rep[c], a)]]));
  }
  return ClassifierDfa(d.ext(), std::move(next), std::move(verdicts), 0);
}

ClassifierDfa determinize(const Nfa& a) {
  const ExtAlphabet ext(a.alphabet(), {});
  using Key = std::vector<State>;
  Key init = a.initial();
  std::sort(init.begin(), init.end());
  return explore<Key>(
      ext, init,
      [&](const Key& k, Letter l) {
        Key out;
        for (State s : k) {
          for (const Edge& e : a.successors(s, l)) out.push_back(e.dst);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
      },
      [&](const Key& k) {
        for (State s : k) {
          if (a.is_final(s)) return Verdict::kHolds;
        }
        return Verdict::kFails;
      });
}

}  // namespace wfoc
