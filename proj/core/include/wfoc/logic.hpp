#pragma once

#include "wfoc/automaton.hpp"
#include "wfoc/weight.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace wfoc {

// Named automaton referenced by run atoms.
struct RunRef {
  std::string name;
  Nfa automaton;
};
using RunRefPtr = std::shared_ptr<const RunRef>;

enum class FoKind { kTrue, kFalse, kLetter, kLeq, kLt, kEq, kNot, kAnd, kOr, kImplies, kForall, kExists, kRun };

struct FoNode;
using Fo = std::shared_ptr<const FoNode>;

// kLetter: letter at x.  kLeq/kLt/kEq: x op y.  kForall/kExists: binder x.
// kRun: the factor strictly between x and y (x empty = word start, y empty =
// word end) is in L(run->automaton) from p to q.
struct FoNode {
  FoKind kind = FoKind::kTrue;
  std::string x;
  std::string y;
  std::string letter;
  Fo lhs;
  Fo rhs;
  RunRefPtr run;
  State p = 0;
  State q = 0;
};

namespace fo {
Fo top();
Fo bottom();
Fo letter(std::string a, std::string x);
Fo leq(std::string x, std::string y);
Fo lt(std::string x, std::string y);
Fo eq(std::string x, std::string y);
Fo neg(Fo f);
Fo conj(Fo a, Fo b);
Fo disj(Fo a, Fo b);
Fo implies(Fo a, Fo b);
Fo forall(std::string x, Fo body);
Fo exists(std::string x, Fo body);
// lo/hi empty mean word start/end.
Fo run(RunRefPtr ref, State p, State q, std::string lo = {}, std::string hi = {});
// Left-leaning conjunction; top() when empty.
Fo conj_all(const std::vector<Fo>& parts);
}  // namespace fo

enum class StepKind { kConst, kIte };

struct StepNode;
using Step = std::shared_ptr<const StepNode>;

struct StepNode {
  StepKind kind = StepKind::kConst;
  Weight weight;
  Fo cond;
  Step then_branch;
  Step else_branch;
};

namespace step {
Step constant(Weight w);
Step ite(Fo cond, Step then_branch, Step else_branch);
}  // namespace step

enum class WfoKind { kZero, kProd, kIte, kPlus, kSum };

struct WfoNode;
using Wfo = std::shared_ptr<const WfoNode>;

// kProd: prod var. body_step.  kSum: sum var. lhs.  kIte: cond ? lhs : rhs.
struct WfoNode {
  WfoKind kind = WfoKind::kZero;
  std::string var;
  Step body_step;
  Fo cond;
  Wfo lhs;
  Wfo rhs;
};

namespace wfo {
Wfo zero();
Wfo prod(std::string x, Step body);
Wfo ite(Fo cond, Wfo then_branch, Wfo else_branch);
Wfo plus(Wfo a, Wfo b);
Wfo sum(std::string x, Wfo body);
// Left-leaning sum; zero() when empty.
Wfo plus_all(const std::vector<Wfo>& parts);
}  // namespace wfo

std::set<std::string> free_vars(const Fo& f);
std::set<std::string> free_vars(const Step& s);
std::set<std::string> free_vars(const Wfo& w);
// Every variable name occurring anywhere, bound or free.
std::set<std::string> all_vars(const Fo& f);
std::set<std::string> all_vars(const Wfo& w);

bool uses_sum(const Wfo& w);
bool uses_plus(const Wfo& w);
bool uses_run_atoms(const Fo& f);
bool uses_run_atoms(const Wfo& w);
std::size_t quantifier_depth(const Fo& f);
std::size_t node_count(const Wfo& w);

// Structural equality; run atoms compare by automaton identity.
bool structurally_equal(const Fo& a, const Fo& b);

// FO conditions of a step formula in syntax order, structural duplicates dropped.
std::vector<Fo> step_conditions(const Step& s);
// Weight selected by the cascade when condition i evaluates to bits[i]
// (indices as returned by step_conditions).
const Weight& select_weight(const Step& s, const std::vector<Fo>& conditions, const std::vector<bool>& bits);

// Concrete syntax, re-parseable by the parser (run atoms print as
// @NAME[p->q](lo..hi)).
std::string to_string(const Fo& f);
std::string to_string(const Step& s);
std::string to_string(const Wfo& w);

// All automata referenced by run atoms, keyed by name.
std::vector<RunRefPtr> referenced_automata(const Wfo& w);

}  // namespace wfoc
