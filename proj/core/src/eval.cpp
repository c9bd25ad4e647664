#include "wfoc/eval.hpp"

#include "wfoc/analysis.hpp"
#include "wfoc/error.hpp"

#include <algorithm>

namespace wfoc {

namespace {

std::size_t lookup(const Valuation& sigma, const std::string& v) {
  auto it = sigma.find(v);
  if (it == sigma.end()) throw InputError("unbound variable '" + v + "'");
  return it->second;
}

struct FoEval {
  const Alphabet& alphabet;
  std::span<const Letter> u;
  Valuation sigma;

  bool run(const Fo& f) {
    switch (f->kind) {
      case FoKind::kTrue: return true;
      case FoKind::kFalse: return false;
      case FoKind::kLetter: return alphabet.name(u[lookup(sigma, f->x) - 1]) == f->letter;
      case FoKind::kLeq: return lookup(sigma, f->x) <= lookup(sigma, f->y);
      case FoKind::kLt: return lookup(sigma, f->x) < lookup(sigma, f->y);
      case FoKind::kEq: return lookup(sigma, f->x) == lookup(sigma, f->y);
      case FoKind::kNot: return !run(f->lhs);
      case FoKind::kAnd: return run(f->lhs) && run(f->rhs);
      case FoKind::kOr: return run(f->lhs) || run(f->rhs);
      case FoKind::kImplies: return !run(f->lhs) || run(f->rhs);
      case FoKind::kForall:
      case FoKind::kExists: {
        const bool want = f->kind == FoKind::kExists;
        auto saved = sigma.find(f->x) == sigma.end() ? std::optional<std::size_t>() : sigma[f->x];
        bool result = !want;
        for (std::size_t i = 1; i <= u.size(); ++i) {
          sigma[f->x] = i;
          if (run(f->lhs) == want) {
            result = want;
            break;
          }
        }
        if (saved) {
          sigma[f->x] = *saved;
        } else {
          sigma.erase(f->x);
        }
        return result;
      }
      case FoKind::kRun: return eval_run_atom(*f, alphabet, u, sigma);
    }
    return false;
  }
};

}  // namespace

bool eval_run_atom(const FoNode& atom, const Alphabet& alphabet, std::span<const Letter> u, const Valuation& sigma) {
  const Nfa& a = atom.run->automaton;
  // Factor u[lo+1 .. hi-1] with 1-based lo, hi; lo = 0 and hi = |u|+1 at the word ends.
  const std::size_t lo = atom.x.empty() ? 0 : lookup(sigma, atom.x);
  const std::size_t hi = atom.y.empty() ? u.size() + 1 : lookup(sigma, atom.y);
  if (hi <= lo + 1) return atom.p == atom.q;
  Word factor;
  for (std::size_t j = lo + 1; j < hi; ++j) {
    auto l = a.alphabet().find(alphabet.name(u[j - 1]));
    if (!l) return false;
    factor.push_back(*l);
  }
  return accepts_between(a, atom.p, atom.q, factor);
}

bool eval_fo(const Fo& f, const Alphabet& alphabet, std::span<const Letter> u, const Valuation& sigma) {
  if (u.empty()) {
    const auto free = free_vars(f);
    if (!free.empty()) throw InputError("formula with free variables evaluated on the empty word");
  }
  for (const auto& [v, i] : sigma) {
    if (i < 1 || i > u.size()) throw InputError("variable '" + v + "' points outside the word");
  }
  FoEval ev{alphabet, u, sigma};
  return ev.run(f);
}

Weight eval_step(const Step& s, const Alphabet& alphabet, std::span<const Letter> u, const Valuation& sigma) {
  if (u.empty()) throw InputError("step formulas are evaluated on non-empty words");
  const StepNode* cur = s.get();
  while (cur->kind == StepKind::kIte) {
    cur = eval_fo(cur->cond, alphabet, u, sigma) ? cur->then_branch.get() : cur->else_branch.get();
  }
  return cur->weight;
}

namespace {

void eval_into(const Wfo& w, const Alphabet& alphabet, std::span<const Letter> u, Valuation& sigma, Multiset& out) {
  switch (w->kind) {
    case WfoKind::kZero: return;
    case WfoKind::kProd: {
      WeightSeq seq;
      seq.reserve(u.size());
      const auto saved = sigma.find(w->var) == sigma.end() ? std::optional<std::size_t>() : sigma[w->var];
      for (std::size_t i = 1; i <= u.size(); ++i) {
        sigma[w->var] = i;
        seq.push_back(eval_step(w->body_step, alphabet, u, sigma));
      }
      if (saved) {
        sigma[w->var] = *saved;
      } else {
        sigma.erase(w->var);
      }
      out.add(std::move(seq));
      return;
    }
    case WfoKind::kIte:
      eval_into(eval_fo(w->cond, alphabet, u, sigma) ? w->lhs : w->rhs, alphabet, u, sigma, out);
      return;
    case WfoKind::kPlus:
      eval_into(w->lhs, alphabet, u, sigma, out);
      eval_into(w->rhs, alphabet, u, sigma, out);
      return;
    case WfoKind::kSum: {
      const auto saved = sigma.find(w->var) == sigma.end() ? std::optional<std::size_t>() : sigma[w->var];
      for (std::size_t i = 1; i <= u.size(); ++i) {
        sigma[w->var] = i;
        eval_into(w->lhs, alphabet, u, sigma, out);
      }
      if (saved) {
        sigma[w->var] = *saved;
      } else {
        sigma.erase(w->var);
      }
      return;
    }
  }
}

}  // namespace

Multiset eval_wfo(const Wfo& w, const Alphabet& alphabet, std::span<const Letter> u, const Valuation& sigma) {
  if (u.empty()) throw InputError("wFO semantics is defined on non-empty words");
  for (const auto& v : free_vars(w)) lookup(sigma, v);
  for (const auto& [v, i] : sigma) {
    if (i < 1 || i > u.size()) throw InputError("variable '" + v + "' points outside the word");
  }
  Valuation s = sigma;
  Multiset out;
  eval_into(w, alphabet, u, s, out);
  return out;
}

Multiset eval_wfo(const Wfo& w, const ExtAlphabet& ext, std::span<const Letter> ext_word) {
  if (ext_word.empty()) throw InputError("wFO semantics is defined on non-empty words");
  auto d = decode(ext, ext_word);
  if (!d) return {};
  for (const auto& v : free_vars(w)) {
    if (!ext.var_index(v)) return {};
  }
  return eval_wfo(w, ext.base(), d->word, d->valuation);
}

namespace {

enum class Mode { kBefore, kBetween, kAfter };

struct Relativizer {
  Mode mode;
  std::string x;
  std::string y;

  Fo guard(const std::string& z) const {
    switch (mode) {
      case Mode::kBefore: return fo::lt(z, x);
      case Mode::kBetween: return fo::conj(fo::lt(x, z), fo::lt(z, y));
      case Mode::kAfter: return fo::lt(x, z);
    }
    return fo::top();
  }

  Fo run(const Fo& f) const {
    switch (f->kind) {
      case FoKind::kTrue:
      case FoKind::kFalse:
      case FoKind::kLetter:
      case FoKind::kLeq:
      case FoKind::kLt:
      case FoKind::kEq: return f;
      case FoKind::kNot: return fo::neg(run(f->lhs));
      case FoKind::kAnd: return fo::conj(run(f->lhs), run(f->rhs));
      case FoKind::kOr: return fo::disj(run(f->lhs), run(f->rhs));
      case FoKind::kImplies: return fo::implies(run(f->lhs), run(f->rhs));
      case FoKind::kForall: return fo::forall(f->x, fo::implies(guard(f->x), run(f->lhs)));
      case FoKind::kExists: return fo::exists(f->x, fo::conj(guard(f->x), run(f->lhs)));
      case FoKind::kRun: {
        // Empty bounds denote the ends of the factor the sentence lives on.
        std::string lo = f->x, hi = f->y;
        if (lo.empty() && mode != Mode::kBefore) lo = x;
        if (hi.empty() && mode == Mode::kBefore) hi = x;
        if (hi.empty() && mode == Mode::kBetween) hi = y;
        return fo::run(f->run, f->p, f->q, lo, hi);
      }
    }
    return f;
  }
};

Fo relativize(const Fo& f, Mode mode, const std::string& x, const std::string& y) {
  if (!free_vars(f).empty()) throw InputError("relativization expects a sentence");
  const auto used = all_vars(f);
  if (used.count(x) || (!y.empty() && used.count(y))) {
    throw ScopeError("relativization variable occurs in the sentence");
  }
  if (mode == Mode::kBetween && x == y) throw ScopeError("relativization needs two distinct variables");
  return Relativizer{mode, x, y}.run(f);
}

}  // namespace

Fo relativize_before(const Fo& f, const std::string& x) { return relativize(f, Mode::kBefore, x, {}); }
Fo relativize_between(const Fo& f, const std::string& x, const std::string& y) {
  return relativize(f, Mode::kBetween, x, y);
}
Fo relativize_after(const Fo& f, const std::string& x) { return relativize(f, Mode::kAfter, x, {}); }

}  // namespace wfoc
