#include "wfoc/logic.hpp"

#include "wfoc/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace wfoc {

namespace fo {

namespace {
Fo make(FoNode node) { return std::make_shared<const FoNode>(std::move(node)); }
}  // namespace

Fo top() { return make(FoNode{FoKind::kTrue}); }
Fo bottom() { return make(FoNode{FoKind::kFalse}); }

Fo letter(std::string a, std::string x) {
  FoNode n{FoKind::kLetter};
  n.letter = std::move(a);
  n.x = std::move(x);
  return make(std::move(n));
}

namespace {
Fo compare(FoKind k, std::string x, std::string y) {
  FoNode n{k};
  n.x = std::move(x);
  n.y = std::move(y);
  return make(std::move(n));
}
Fo binary(FoKind k, Fo a, Fo b) {
  if (!a || !b) throw InputError("null subformula");
  FoNode n{k};
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return make(std::move(n));
}
Fo binder(FoKind k, std::string x, Fo body) {
  if (!body) throw InputError("null subformula");
  FoNode n{k};
  n.x = std::move(x);
  n.lhs = std::move(body);
  return make(std::move(n));
}
}  // namespace

Fo leq(std::string x, std::string y) { return compare(FoKind::kLeq, std::move(x), std::move(y)); }
Fo lt(std::string x, std::string y) { return compare(FoKind::kLt, std::move(x), std::move(y)); }
Fo eq(std::string x, std::string y) { return compare(FoKind::kEq, std::move(x), std::move(y)); }

Fo neg(Fo f) {
  if (!f) throw InputError("null subformula");
  FoNode n{FoKind::kNot};
  n.lhs = std::move(f);
  return make(std::move(n));
}

Fo conj(Fo a, Fo b) { return binary(FoKind::kAnd, std::move(a), std::move(b)); }
Fo disj(Fo a, Fo b) { return binary(FoKind::kOr, std::move(a), std::move(b)); }
Fo implies(Fo a, Fo b) { return binary(FoKind::kImplies, std::move(a), std::move(b)); }
Fo forall(std::string x, Fo body) { return binder(FoKind::kForall, std::move(x), std::move(body)); }
Fo exists(std::string x, Fo body) { return binder(FoKind::kExists, std::move(x), std::move(body)); }

Fo run(RunRefPtr ref, State p, State q, std::string lo, std::string hi) {
  if (!ref) throw InputError("run atom without automaton");
  if (p >= ref->automaton.num_states() || q >= ref->automaton.num_states()) {
    throw InputError("run atom references unknown state of '" + ref->name + "'");
  }
  FoNode n{FoKind::kRun};
  n.run = std::move(ref);
  n.p = p;
  n.q = q;
  n.x = std::move(lo);
  n.y = std::move(hi);
  return make(std::move(n));
}

Fo conj_all(const std::vector<Fo>& parts) {
  if (parts.empty()) return top();
  Fo out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = conj(out, parts[i]);
  return out;
}

}  // namespace fo

namespace step {

Step constant(Weight w) {
  StepNode n;
  n.kind = StepKind::kConst;
  n.weight = std::move(w);
  return std::make_shared<const StepNode>(std::move(n));
}

Step ite(Fo cond, Step then_branch, Step else_branch) {
  if (!cond || !then_branch || !else_branch) throw InputError("null subformula");
  StepNode n;
  n.kind = StepKind::kIte;
  n.cond = std::move(cond);
  n.then_branch = std::move(then_branch);
  n.else_branch = std::move(else_branch);
  return std::make_shared<const StepNode>(std::move(n));
}

}  // namespace step

namespace wfo {

Wfo zero() { return std::make_shared<const WfoNode>(WfoNode{WfoKind::kZero}); }

Wfo prod(std::string x, Step body) {
  if (!body) throw InputError("null subformula");
  WfoNode n{WfoKind::kProd};
  n.var = std::move(x);
  n.body_step = std::move(body);
  return std::make_shared<const WfoNode>(std::move(n));
}

Wfo ite(Fo cond, Wfo then_branch, Wfo else_branch) {
  if (!cond || !then_branch || !else_branch) throw InputError("null subformula");
  WfoNode n{WfoKind::kIte};
  n.cond = std::move(cond);
  n.lhs = std::move(then_branch);
  n.rhs = std::move(else_branch);
  return std::make_shared<const WfoNode>(std::move(n));
}

Wfo plus(Wfo a, Wfo b) {
  if (!a || !b) throw InputError("null subformula");
  WfoNode n{WfoKind::kPlus};
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return std::make_shared<const WfoNode>(std::move(n));
}

Wfo sum(std::string x, Wfo body) {
  if (!body) throw InputError("null subformula");
  WfoNode n{WfoKind::kSum};
  n.var = std::move(x);
  n.lhs = std::move(body);
  return std::make_shared<const WfoNode>(std::move(n));
}

Wfo plus_all(const std::vector<Wfo>& parts) {
  if (parts.empty()) return zero();
  Wfo out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = plus(out, parts[i]);
  return out;
}

}  // namespace wfo

namespace {

void collect_free(const Fo& f, std::set<std::string>& bound, std::set<std::string>& out) {
  auto use = [&](const std::string& v) {
    if (!v.empty() && !bound.count(v)) out.insert(v);
  };
  switch (f->kind) {
    case FoKind::kTrue:
    case FoKind::kFalse: return;
    case FoKind::kLetter: use(f->x); return;
    case FoKind::kLeq:
    case FoKind::kLt:
    case FoKind::kEq:
    case FoKind::kRun:
      use(f->x);
      use(f->y);
      return;
    case FoKind::kNot: collect_free(f->lhs, bound, out); return;
    case FoKind::kAnd:
    case FoKind::kOr:
    case FoKind::kImplies:
      collect_free(f->lhs, bound, out);
      collect_free(f->rhs, bound, out);
      return;
    case FoKind::kForall:
    case FoKind::kExists: {
      const bool fresh = bound.insert(f->x).second;
      collect_free(f->lhs, bound, out);
      if (fresh) bound.erase(f->x);
      return;
    }
  }
}

void collect_free(const Step& s, std::set<std::string>& bound, std::set<std::string>& out) {
  if (s->kind == StepKind::kConst) return;
  collect_free(s->cond, bound, out);
  collect_free(s->then_branch, bound, out);
  collect_free(s->else_branch, bound, out);
}

void collect_free(const Wfo& w, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (w->kind) {
    case WfoKind::kZero: return;
    case WfoKind::kProd:
    case WfoKind::kSum: {
      const bool fresh = bound.insert(w->var).second;
      if (w->kind == WfoKind::kProd) {
        collect_free(w->body_step, bound, out);
      } else {
        collect_free(w->lhs, bound, out);
      }
      if (fresh) bound.erase(w->var);
      return;
    }
    case WfoKind::kIte:
      collect_free(w->cond, bound, out);
      collect_free(w->lhs, bound, out);
      collect_free(w->rhs, bound, out);
      return;
    case WfoKind::kPlus:
      collect_free(w->lhs, bound, out);
      collect_free(w->rhs, bound, out);
      return;
  }
}

void collect_all(const Fo& f, std::set<std::string>& out) {
  if (!f->x.empty()) out.insert(f->x);
  if (!f->y.empty()) out.insert(f->y);
  if (f->lhs) collect_all(f->lhs, out);
  if (f->rhs) collect_all(f->rhs, out);
}

void collect_all(const Step& s, std::set<std::string>& out) {
  if (s->kind == StepKind::kConst) return;
  collect_all(s->cond, out);
  collect_all(s->then_branch, out);
  collect_all(s->else_branch, out);
}

void collect_all(const Wfo& w, std::set<std::string>& out) {
  if (!w->var.empty()) out.insert(w->var);
  if (w->body_step) collect_all(w->body_step, out);
  if (w->cond) collect_all(w->cond, out);
  if (w->lhs) collect_all(w->lhs, out);
  if (w->rhs) collect_all(w->rhs, out);
}

}  // namespace

std::set<std::string> free_vars(const Fo& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> free_vars(const Step& s) {
  std::set<std::string> bound, out;
  collect_free(s, bound, out);
  return out;
}

std::set<std::string> free_vars(const Wfo& w) {
  std::set<std::string> bound, out;
  collect_free(w, bound, out);
  return out;
}

std::set<std::string> all_vars(const Fo& f) {
  std::set<std::string> out;
  collect_all(f, out);
  return out;
}

std::set<std::string> all_vars(const Wfo& w) {
  std::set<std::string> out;
  collect_all(w, out);
  return out;
}

bool uses_sum(const Wfo& w) {
  switch (w->kind) {
    case WfoKind::kSum: return true;
    case WfoKind::kIte:
    case WfoKind::kPlus: return uses_sum(w->lhs) || uses_sum(w->rhs);
    default: return false;
  }
}

bool uses_plus(const Wfo& w) {
  switch (w->kind) {
    case WfoKind::kPlus: return true;
    case WfoKind::kIte: return uses_plus(w->lhs) || uses_plus(w->rhs);
    case WfoKind::kSum: return uses_plus(w->lhs);
    default: return false;
  }
}

bool uses_run_atoms(const Fo& f) {
  if (f->kind == FoKind::kRun) return true;
  return (f->lhs && uses_run_atoms(f->lhs)) || (f->rhs && uses_run_atoms(f->rhs));
}

namespace {
bool step_uses_runs(const Step& s) {
  if (s->kind == StepKind::kConst) return false;
  return uses_run_atoms(s->cond) || step_uses_runs(s->then_branch) || step_uses_runs(s->else_branch);
}
}  // namespace

bool uses_run_atoms(const Wfo& w) {
  if (w->cond && uses_run_atoms(w->cond)) return true;
  if (w->body_step && step_uses_runs(w->body_step)) return true;
  return (w->lhs && uses_run_atoms(w->lhs)) || (w->rhs && uses_run_atoms(w->rhs));
}

std::size_t quantifier_depth(const Fo& f) {
  std::size_t d = 0;
  if (f->lhs) d = std::max(d, quantifier_depth(f->lhs));
  if (f->rhs) d = std::max(d, quantifier_depth(f->rhs));
  if (f->kind == FoKind::kForall || f->kind == FoKind::kExists) ++d;
  return d;
}

std::size_t node_count(const Wfo& w) {
  std::size_t n = 1;
  if (w->lhs) n += node_count(w->lhs);
  if (w->rhs) n += node_count(w->rhs);
  return n;
}

bool structurally_equal(const Fo& a, const Fo& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  if (a->x != b->x || a->y != b->y || a->letter != b->letter) return false;
  if (a->kind == FoKind::kRun && (a->run != b->run || a->p != b->p || a->q != b->q)) return false;
  if ((a->lhs == nullptr) != (b->lhs == nullptr) || (a->rhs == nullptr) != (b->rhs == nullptr)) return false;
  if (a->lhs && !structurally_equal(a->lhs, b->lhs)) return false;
  if (a->rhs && !structurally_equal(a->rhs, b->rhs)) return false;
  return true;
}

std::vector<Fo> step_conditions(const Step& s) {
  std::vector<Fo> out;
  std::vector<Step> stack{s};
  // Pre-order: condition, then-branch, else-branch.
  while (!stack.empty()) {
    Step cur = stack.back();
    stack.pop_back();
    if (cur->kind == StepKind::kConst) continue;
    if (std::none_of(out.begin(), out.end(), [&](const Fo& f) { return structurally_equal(f, cur->cond); })) {
      out.push_back(cur->cond);
    }
    stack.push_back(cur->else_branch);
    stack.push_back(cur->then_branch);
  }
  return out;
}

const Weight& select_weight(const Step& s, const std::vector<Fo>& conditions, const std::vector<bool>& bits) {
  const StepNode* cur = s.get();
  while (cur->kind == StepKind::kIte) {
    auto it = std::find_if(conditions.begin(), conditions.end(),
                           [&](const Fo& f) { return structurally_equal(f, cur->cond); });
    if (it == conditions.end()) throw InputError("condition missing from the enumeration");
    cur = bits.at(static_cast<std::size_t>(it - conditions.begin())) ? cur->then_branch.get() : cur->else_branch.get();
  }
  return cur->weight;
}

namespace {

bool simple_name(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

std::string quote_state(const std::string& s) {
  if (simple_name(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

int precedence(const Fo& f) {
  switch (f->kind) {
    case FoKind::kForall:
    case FoKind::kExists: return 0;
    case FoKind::kImplies: return 1;
    case FoKind::kOr: return 2;
    case FoKind::kAnd: return 3;
    default: return 4;
  }
}

std::string print(const Fo& f, int min_prec) {
  std::string s;
  switch (f->kind) {
    case FoKind::kTrue: s = "true"; break;
    case FoKind::kFalse: s = "false"; break;
    case FoKind::kLetter: s = "P" + f->letter + "(" + f->x + ")"; break;
    case FoKind::kLeq: s = f->x + " <= " + f->y; break;
    case FoKind::kLt: s = f->x + " < " + f->y; break;
    case FoKind::kEq: s = f->x + " = " + f->y; break;
    case FoKind::kNot: s = "!" + print(f->lhs, 4); break;
    case FoKind::kAnd: s = print(f->lhs, 3) + " & " + print(f->rhs, 4); break;
    case FoKind::kOr: s = print(f->lhs, 2) + " | " + print(f->rhs, 3); break;
    case FoKind::kImplies: s = print(f->lhs, 2) + " -> " + print(f->rhs, 1); break;
    case FoKind::kForall: s = "forall " + f->x + ". " + print(f->lhs, 0); break;
    case FoKind::kExists: s = "exists " + f->x + ". " + print(f->lhs, 0); break;
    case FoKind::kRun: {
      const Nfa& a = f->run->automaton;
      s = "@" + f->run->name + "[" + quote_state(a.state_name(f->p)) + "->" + quote_state(a.state_name(f->q)) + "](" +
          (f->x.empty() ? "^" : f->x) + ".." + (f->y.empty() ? "$" : f->y) + ")";
      break;
    }
  }
  return precedence(f) < min_prec ? "(" + s + ")" : s;
}

std::string print_cond(const Fo& f) { return print(f, 4); }

std::string print(const Step& s) {
  if (s->kind == StepKind::kConst) return s->weight.to_string();
  std::string then_part = print(s->then_branch);
  if (s->then_branch->kind == StepKind::kIte) then_part = "(" + then_part + ")";
  return print_cond(s->cond) + " ? " + then_part + " : " + print(s->else_branch);
}

enum class Ctx { kTop, kPlusLeft, kPlusRight, kIteThen, kIteElse };

std::string print(const Wfo& w, Ctx ctx) {
  switch (w->kind) {
    case WfoKind::kZero: return "zero";
    case WfoKind::kProd: {
      std::string s = "prod " + w->var + ". " + print(w->body_step);
      if (ctx == Ctx::kIteThen && w->body_step->kind == StepKind::kIte) s = "(" + s + ")";
      return s;
    }
    case WfoKind::kSum: {
      std::string s = "sum " + w->var + ". " + print(w->lhs, Ctx::kTop);
      if (ctx == Ctx::kPlusLeft || ctx == Ctx::kPlusRight || ctx == Ctx::kIteElse) s = "(" + s + ")";
      return s;
    }
    case WfoKind::kIte: {
      std::string then_part = print(w->lhs, Ctx::kIteThen);
      if (w->lhs->kind == WfoKind::kIte) then_part = "(" + then_part + ")";
      return print_cond(w->cond) + " ? " + then_part + " : " + print(w->rhs, Ctx::kIteElse);
    }
    case WfoKind::kPlus: {
      std::string s = print(w->lhs, Ctx::kPlusLeft) + " + " + print(w->rhs, Ctx::kPlusRight);
      if (ctx == Ctx::kPlusRight || ctx == Ctx::kIteElse) s = "(" + s + ")";
      return s;
    }
  }
  return "?";
}

void collect_refs(const Fo& f, std::map<std::string, RunRefPtr>& out) {
  if (f->kind == FoKind::kRun) {
    auto [it, inserted] = out.emplace(f->run->name, f->run);
    if (!inserted && it->second != f->run) {
      throw InputError("two different automata share the name '" + f->run->name + "'");
    }
  }
  if (f->lhs) collect_refs(f->lhs, out);
  if (f->rhs) collect_refs(f->rhs, out);
}

void collect_refs(const Step& s, std::map<std::string, RunRefPtr>& out) {
  if (s->kind == StepKind::kConst) return;
  collect_refs(s->cond, out);
  collect_refs(s->then_branch, out);
  collect_refs(s->else_branch, out);
}

void collect_refs(const Wfo& w, std::map<std::string, RunRefPtr>& out) {
  if (w->cond) collect_refs(w->cond, out);
  if (w->body_step) collect_refs(w->body_step, out);
  if (w->lhs) collect_refs(w->lhs, out);
  if (w->rhs) collect_refs(w->rhs, out);
}

}  // namespace

std::string to_string(const Fo& f) { return print(f, 0); }
std::string to_string(const Step& s) { return print(s); }
std::string to_string(const Wfo& w) { return print(w, Ctx::kTop); }

std::vector<RunRefPtr> referenced_automata(const Wfo& w) {
  std::map<std::string, RunRefPtr> refs;
  collect_refs(w, refs);
  std::vector<RunRefPtr> out;
  for (auto& entry : refs) out.push_back(entry.second);
  return out;
}

}  // namespace wfoc
