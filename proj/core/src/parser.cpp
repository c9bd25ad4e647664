#include "wfoc/parser.hpp"

#include "wfoc/error.hpp"
#include "wfoc/io.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace wfoc {

namespace {

enum class Tok { kIdent, kNumber, kString, kSym, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::kIdent, std::string(s.substr(start, i - start)), start});
    } else if (digit(c) || (c == '-' && i + 1 < s.size() && digit(s[i + 1]))) {
      ++i;
      while (i < s.size() && digit(s[i])) ++i;
      if (i + 1 < s.size() && s[i] == '/' && digit(s[i + 1])) {
        ++i;
        while (i < s.size() && digit(s[i])) ++i;
      }
      out.push_back({Tok::kNumber, std::string(s.substr(start, i - start)), start});
    } else if (c == '"') {
      std::string text;
      ++i;
      while (i < s.size() && s[i] != '"') {
        if (s[i] == '\\' && i + 1 < s.size()) ++i;
        text += s[i++];
      }
      if (i >= s.size()) throw SyntaxError("unterminated string", start);
      ++i;
      out.push_back({Tok::kString, std::move(text), start});
    } else {
      static const char* const kTwo[] = {"->", "<=", ".."};
      std::string sym(1, c);
      for (const char* t : kTwo) {
        if (s.substr(i, 2) == t) sym = t;
      }
      if (sym.size() == 1 && std::string_view("().?:+!&|<=@[]^$,").find(c) == std::string_view::npos) {
        throw SyntaxError(std::string("unexpected character '") + c + "'", start);
      }
      i += sym.size();
      out.push_back({Tok::kSym, std::move(sym), start});
    }
  }
  out.push_back({Tok::kEnd, "", s.size()});
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw{"true", "false", "forall", "exists", "prod", "sum", "zero"};
  return kw;
}

class Parser {
 public:
  Parser(std::string_view text, const AutomatonEnv& env) : toks_(lex(text)), env_(env) {}

  Fo fo_top() {
    Fo f = fo_expr();
    expect_end();
    return f;
  }
  Step step_top() {
    Step s = step();
    expect_end();
    return s;
  }
  Wfo wfo_top() {
    Wfo w = wfo();
    expect_end();
    return w;
  }

 private:
  struct Memo {
    Fo result;
    std::size_t end;
    std::string error;
    std::size_t error_offset;
  };

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool at_sym(const char* s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::kSym && peek(ahead).text == s;
  }
  bool at_keyword(const char* k) const { return peek().kind == Tok::kIdent && peek().text == k; }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    const std::string found = t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    throw SyntaxError("expected " + what + ", found " + found, t.offset);
  }
  void expect_sym(const char* s) {
    if (!at_sym(s)) fail(std::string("'") + s + "'");
    ++pos_;
  }
  void expect_end() {
    if (peek().kind != Tok::kEnd) fail("end of input");
  }
  std::string variable() {
    const Token& t = peek();
    if (t.kind != Tok::kIdent || keywords().count(t.text)) fail("a variable");
    ++pos_;
    return t.text;
  }

  // FO, memoized per start position because conditionals are tried first and
  // abandoned when no '?' follows.
  Fo fo_expr() {
    const std::size_t start = pos_;
    if (auto it = memo_.find(start); it != memo_.end()) {
      if (!it->second.result) throw SyntaxError(it->second.error, it->second.error_offset);
      pos_ = it->second.end;
      return it->second.result;
    }
    try {
      Fo f = fo_quant_or_impl();
      memo_[start] = Memo{f, pos_, {}, 0};
      return f;
    } catch (const SyntaxError& e) {
      std::string msg = e.what();
      msg = msg.substr(0, msg.rfind(" at offset "));
      memo_[start] = Memo{nullptr, 0, msg, e.position()};
      throw;
    }
  }

  Fo fo_quant_or_impl() {
    if (at_keyword("forall") || at_keyword("exists")) return quantifier();
    Fo lhs = fo_or();
    if (at_sym("->")) {
      ++pos_;
      return fo::implies(lhs, fo_expr());
    }
    return lhs;
  }

  Fo quantifier() {
    const bool all = peek().text == "forall";
    ++pos_;
    std::string x = variable();
    expect_sym(".");
    Fo body = fo_expr();
    return all ? fo::forall(x, body) : fo::exists(x, body);
  }

  Fo fo_or() {
    Fo f = fo_and();
    while (at_sym("|")) {
      ++pos_;
      f = fo::disj(f, fo_and());
    }
    return f;
  }

  Fo fo_and() {
    Fo f = fo_unary();
    while (at_sym("&")) {
      ++pos_;
      f = fo::conj(f, fo_unary());
    }
    return f;
  }

  Fo fo_unary() {
    if (at_sym("!")) {
      ++pos_;
      return fo::neg(fo_unary());
    }
    if (at_keyword("forall") || at_keyword("exists")) return quantifier();
    if (at_sym("(")) {
      ++pos_;
      Fo f = fo_expr();
      expect_sym(")");
      return f;
    }
    if (at_sym("@")) return run_atom();
    const Token& t = peek();
    if (t.kind != Tok::kIdent) fail("a formula");
    if (t.text == "true") {
      ++pos_;
      return fo::top();
    }
    if (t.text == "false") {
      ++pos_;
      return fo::bottom();
    }
    if (t.text.size() > 1 && t.text[0] == 'P' && at_sym("(", 1)) {
      std::string letter = t.text.substr(1);
      pos_ += 2;
      std::string x = variable();
      expect_sym(")");
      return fo::letter(letter, x);
    }
    std::string x = variable();
    if (at_sym("<=")) {
      ++pos_;
      return fo::leq(x, variable());
    }
    if (at_sym("<")) {
      ++pos_;
      return fo::lt(x, variable());
    }
    if (at_sym("=")) {
      ++pos_;
      return fo::eq(x, variable());
    }
    fail("'<=', '<' or '='");
  }

  std::string state_token() {
    const Token& t = peek();
    if (t.kind != Tok::kIdent && t.kind != Tok::kNumber && t.kind != Tok::kString) fail("a state name");
    ++pos_;
    return t.text;
  }

  Fo run_atom() {
    const std::size_t at = peek().offset;
    expect_sym("@");
    const Token& name = peek();
    if (name.kind != Tok::kIdent) fail("an automaton name");
    ++pos_;
    auto it = env_.find(name.text);
    if (it == env_.end()) throw SyntaxError("unknown automaton '" + name.text + "'", at);
    const Nfa& a = it->second->automaton;
    expect_sym("[");
    const std::string p = state_token();
    expect_sym("->");
    const std::string q = state_token();
    expect_sym("]");
    expect_sym("(");
    std::string lo, hi;
    if (at_sym("^")) {
      ++pos_;
    } else {
      lo = variable();
    }
    expect_sym("..");
    if (at_sym("$")) {
      ++pos_;
    } else {
      hi = variable();
    }
    expect_sym(")");
    auto sp = a.find_state(p), sq = a.find_state(q);
    if (!sp || !sq) throw SyntaxError("unknown state of automaton '" + name.text + "'", at);
    return fo::run(it->second, *sp, *sq, lo, hi);
  }

  // Tries "fo ?" at the current position; restores the position otherwise.
  Fo try_condition() {
    const std::size_t start = pos_;
    try {
      Fo f = fo_expr();
      if (at_sym("?")) {
        ++pos_;
        return f;
      }
    } catch (const SyntaxError&) {
    }
    pos_ = start;
    return nullptr;
  }

  Step step() {
    if (Fo cond = try_condition()) {
      Step t = step();
      expect_sym(":");
      Step e = step();
      return step::ite(cond, t, e);
    }
    if (at_sym("(")) {
      ++pos_;
      Step s = step();
      expect_sym(")");
      return s;
    }
    const Token& t = peek();
    if (t.kind == Tok::kNumber || (t.kind == Tok::kIdent && !keywords().count(t.text))) {
      ++pos_;
      try {
        return step::constant(Weight::parse(t.text));
      } catch (const InputError& e) {
        throw SyntaxError(e.what(), t.offset);
      }
    }
    fail("a step formula");
  }

  Wfo wfo() {
    Wfo w = term();
    while (at_sym("+")) {
      ++pos_;
      w = wfo::plus(w, term());
    }
    return w;
  }

  Wfo term() {
    if (at_keyword("zero")) {
      ++pos_;
      return wfo::zero();
    }
    if (at_keyword("prod")) {
      ++pos_;
      std::string x = variable();
      expect_sym(".");
      return wfo::prod(x, step());
    }
    if (at_keyword("sum")) {
      ++pos_;
      std::string x = variable();
      expect_sym(".");
      return wfo::sum(x, wfo());
    }
    if (Fo cond = try_condition()) {
      Wfo t = wfo();
      expect_sym(":");
      Wfo e = term();
      return wfo::ite(cond, t, e);
    }
    if (at_sym("(")) {
      ++pos_;
      Wfo w = wfo();
      expect_sym(")");
      return w;
    }
    fail("a weighted formula");
  }

  std::vector<Token> toks_;
  const AutomatonEnv& env_;
  std::size_t pos_ = 0;
  std::map<std::size_t, Memo> memo_;
};

// ---- scoping ----

void no_shadow(const Fo& f, std::set<std::string>& bound) {
  if (f->kind == FoKind::kForall || f->kind == FoKind::kExists) {
    if (!bound.insert(f->x).second) throw ScopeError("variable '" + f->x + "' is rebound inside its own scope");
    no_shadow(f->lhs, bound);
    bound.erase(f->x);
    return;
  }
  if (f->lhs) no_shadow(f->lhs, bound);
  if (f->rhs) no_shadow(f->rhs, bound);
}

void no_shadow(const Step& s, std::set<std::string>& bound) {
  if (s->kind == StepKind::kConst) return;
  no_shadow(s->cond, bound);
  no_shadow(s->then_branch, bound);
  no_shadow(s->else_branch, bound);
}

void no_shadow(const Wfo& w, std::set<std::string>& bound) {
  if (w->kind == WfoKind::kProd || w->kind == WfoKind::kSum) {
    if (!bound.insert(w->var).second) {
      throw ScopeError("variable '" + w->var + "' is rebound inside its own scope");
    }
    if (w->kind == WfoKind::kProd) {
      no_shadow(w->body_step, bound);
    } else {
      no_shadow(w->lhs, bound);
    }
    bound.erase(w->var);
    return;
  }
  if (w->cond) no_shadow(w->cond, bound);
  if (w->lhs) no_shadow(w->lhs, bound);
  if (w->rhs) no_shadow(w->rhs, bound);
}

// Substitution of variable names; valid because scopes never shadow.
std::string sub(const std::string& v, const std::string& from, const std::string& to) { return v == from ? to : v; }

Fo rename(const Fo& f, const std::string& from, const std::string& to) {
  switch (f->kind) {
    case FoKind::kTrue:
    case FoKind::kFalse: return f;
    case FoKind::kLetter: return fo::letter(f->letter, sub(f->x, from, to));
    case FoKind::kLeq: return fo::leq(sub(f->x, from, to), sub(f->y, from, to));
    case FoKind::kLt: return fo::lt(sub(f->x, from, to), sub(f->y, from, to));
    case FoKind::kEq: return fo::eq(sub(f->x, from, to), sub(f->y, from, to));
    case FoKind::kNot: return fo::neg(rename(f->lhs, from, to));
    case FoKind::kAnd: return fo::conj(rename(f->lhs, from, to), rename(f->rhs, from, to));
    case FoKind::kOr: return fo::disj(rename(f->lhs, from, to), rename(f->rhs, from, to));
    case FoKind::kImplies: return fo::implies(rename(f->lhs, from, to), rename(f->rhs, from, to));
    case FoKind::kForall: return fo::forall(sub(f->x, from, to), rename(f->lhs, from, to));
    case FoKind::kExists: return fo::exists(sub(f->x, from, to), rename(f->lhs, from, to));
    case FoKind::kRun: return fo::run(f->run, f->p, f->q, sub(f->x, from, to), sub(f->y, from, to));
  }
  return f;
}

Step rename(const Step& s, const std::string& from, const std::string& to) {
  if (s->kind == StepKind::kConst) return s;
  return step::ite(rename(s->cond, from, to), rename(s->then_branch, from, to), rename(s->else_branch, from, to));
}

Wfo rename(const Wfo& w, const std::string& from, const std::string& to) {
  switch (w->kind) {
    case WfoKind::kZero: return w;
    case WfoKind::kProd: return wfo::prod(sub(w->var, from, to), rename(w->body_step, from, to));
    case WfoKind::kSum: return wfo::sum(sub(w->var, from, to), rename(w->lhs, from, to));
    case WfoKind::kIte: return wfo::ite(rename(w->cond, from, to), rename(w->lhs, from, to), rename(w->rhs, from, to));
    case WfoKind::kPlus: return wfo::plus(rename(w->lhs, from, to), rename(w->rhs, from, to));
  }
  return w;
}

struct Freshener {
  std::set<std::string> taken;  // every name in the formula plus names already issued
  std::set<std::string> used;   // free names and binders already visited

  std::string bind(const std::string& x) {
    if (used.insert(x).second) return x;
    std::string y = x;
    do {
      y += '\'';
    } while (taken.count(y));
    taken.insert(y);
    used.insert(y);
    return y;
  }

  Fo run(const Fo& f) {
    switch (f->kind) {
      case FoKind::kNot: return fo::neg(run(f->lhs));
      case FoKind::kAnd:
      case FoKind::kOr:
      case FoKind::kImplies: {
        // Left operand first so renaming follows reading order.
        Fo l = run(f->lhs);
        Fo r = run(f->rhs);
        if (f->kind == FoKind::kAnd) return fo::conj(l, r);
        return f->kind == FoKind::kOr ? fo::disj(l, r) : fo::implies(l, r);
      }
      case FoKind::kForall:
      case FoKind::kExists: {
        const std::string y = bind(f->x);
        Fo body = run(y == f->x ? f->lhs : rename(f->lhs, f->x, y));
        return f->kind == FoKind::kForall ? fo::forall(y, body) : fo::exists(y, body);
      }
      default: return f;
    }
  }

  Step run(const Step& s) {
    if (s->kind == StepKind::kConst) return s;
    Fo c = run(s->cond);
    Step t = run(s->then_branch);
    return step::ite(c, t, run(s->else_branch));
  }

  Wfo run(const Wfo& w) {
    switch (w->kind) {
      case WfoKind::kZero: return w;
      case WfoKind::kProd: {
        const std::string y = bind(w->var);
        return wfo::prod(y, run(y == w->var ? w->body_step : rename(w->body_step, w->var, y)));
      }
      case WfoKind::kSum: {
        const std::string y = bind(w->var);
        return wfo::sum(y, run(y == w->var ? w->lhs : rename(w->lhs, w->var, y)));
      }
      case WfoKind::kIte: {
        Fo c = run(w->cond);
        Wfo t = run(w->lhs);
        return wfo::ite(c, t, run(w->rhs));
      }
      case WfoKind::kPlus: {
        Wfo l = run(w->lhs);
        return wfo::plus(l, run(w->rhs));
      }
    }
    return w;
  }
};

template <class T>
T scoped(const T& t, std::set<std::string> all, const std::set<std::string>& free) {
  std::set<std::string> bound;
  no_shadow(t, bound);
  Freshener fr{std::move(all), free};
  return fr.run(t);
}

std::set<std::string> all_step_vars(const Step& s) {
  std::set<std::string> out;
  if (s->kind == StepKind::kConst) return out;
  out = all_vars(s->cond);
  for (const auto& b : {s->then_branch, s->else_branch}) {
    auto sub_vars = all_step_vars(b);
    out.insert(sub_vars.begin(), sub_vars.end());
  }
  return out;
}

}  // namespace

Fo parse_fo(std::string_view text, const AutomatonEnv& env) {
  Fo f = Parser(text, env).fo_top();
  return scoped(f, all_vars(f), free_vars(f));
}

Step parse_step(std::string_view text, const AutomatonEnv& env) {
  Step s = Parser(text, env).step_top();
  return scoped(s, all_step_vars(s), free_vars(s));
}

Wfo parse_wfo(std::string_view text, const AutomatonEnv& env) {
  Wfo w = Parser(text, env).wfo_top();
  return scoped(w, all_vars(w), free_vars(w));
}

// ---- files ----

namespace {

std::string trim_copy(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

}  // namespace

FormulaFile parse_formula_file(std::string_view text) {
  FormulaFile out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim_copy(line);
    if (t.rfind("automaton", 0) == 0 && !t.empty() && t.back() == '{') {
      const std::string name = trim_copy(std::string_view(t).substr(9, t.size() - 10));
      if (name.empty()) throw InputError("line " + std::to_string(line_no) + ": automaton block needs a name");
      const std::size_t first = line_no;
      std::string block;
      bool closed = false;
      while (std::getline(in, line)) {
        ++line_no;
        if (trim_copy(line) == "}") {
          closed = true;
          break;
        }
        block += line + "\n";
      }
      if (!closed) throw InputError("line " + std::to_string(first) + ": unterminated automaton block");
      ParsedAutomaton parsed;
      try {
        parsed = parse_automaton(block);
      } catch (const InputError& e) {
        throw InputError("automaton '" + name + "': " + e.what());
      }
      auto ref = std::make_shared<const RunRef>(RunRef{name, parsed.nfa});
      if (!out.automata.emplace(name, ref).second) throw InputError("duplicate automaton '" + name + "'");
      out.body += "\n";
      continue;
    }
    if (!t.empty() && t.front() == '#') {
      const std::string h = trim_copy(std::string_view(t).substr(1));
      if (h.rfind("alphabet:", 0) == 0) {
        out.alphabet = split_list(h.substr(9));
      } else if (h.rfind("fragment:", 0) == 0) {
        for (const auto& flag : split_list(h.substr(9))) {
          if (flag == "no-sum") {
            out.no_sum = true;
          } else if (flag == "no-plus") {
            out.no_plus = true;
          } else {
            throw InputError("line " + std::to_string(line_no) + ": unknown fragment flag '" + flag + "'");
          }
        }
      }
      out.body += "\n";
      continue;
    }
    out.body += line + "\n";
  }
  return out;
}

WfoFile parse_wfo_file(std::string_view text) {
  WfoFile out{parse_formula_file(text), nullptr};
  out.formula = parse_wfo(out.file.body, out.file.automata);
  if (out.file.no_sum && uses_sum(out.formula)) throw InputError("fragment header says no-sum but the formula sums");
  if (out.file.no_plus && uses_plus(out.formula)) throw InputError("fragment header says no-plus but the formula uses +");
  return out;
}

FoFile parse_fo_file(std::string_view text) {
  FoFile out{parse_formula_file(text), nullptr};
  out.formula = parse_fo(out.file.body, out.file.automata);
  return out;
}

WfoFile read_wfo_file(const std::string& path) {
  try {
    return parse_wfo_file(read_text_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

FoFile read_fo_file(const std::string& path) {
  try {
    return parse_fo_file(read_text_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string format_formula_file(const std::string& formula_text, const std::vector<RunRefPtr>& automata,
                                const std::optional<std::vector<std::string>>& alphabet, bool no_sum,
                                bool no_plus) {
  std::string out;
  if (alphabet) {
    out += "# alphabet:";
    for (const auto& a : *alphabet) out += " " + a;
    out += "\n";
  }
  if (no_sum || no_plus) {
    out += "# fragment:";
    if (no_sum) out += " no-sum";
    if (no_sum && no_plus) out += ",";
    if (no_plus) out += " no-plus";
    out += "\n";
  }
  for (const auto& ref : automata) {
    out += "automaton " + ref->name + " {\n" + format_automaton(ref->automaton) + "}\n";
  }
  return out + formula_text + "\n";
}

std::string format_wfo_file(const Wfo& w, const std::optional<std::vector<std::string>>& alphabet) {
  return format_formula_file(to_string(w), referenced_automata(w), alphabet, !uses_sum(w), !uses_plus(w));
}

namespace {

void letters_into(const Fo& f, std::set<std::string>& out) {
  if (f->kind == FoKind::kLetter) out.insert(f->letter);
  if (f->kind == FoKind::kRun) {
    for (const auto& n : f->run->automaton.alphabet().names()) out.insert(n);
  }
  if (f->lhs) letters_into(f->lhs, out);
  if (f->rhs) letters_into(f->rhs, out);
}

void letters_into(const Step& s, std::set<std::string>& out) {
  if (s->kind == StepKind::kConst) return;
  letters_into(s->cond, out);
  letters_into(s->then_branch, out);
  letters_into(s->else_branch, out);
}

void letters_into(const Wfo& w, std::set<std::string>& out) {
  if (w->cond) letters_into(w->cond, out);
  if (w->body_step) letters_into(w->body_step, out);
  if (w->lhs) letters_into(w->lhs, out);
  if (w->rhs) letters_into(w->rhs, out);
}

}  // namespace

std::vector<std::string> mentioned_letters(const Fo& f) {
  std::set<std::string> s;
  letters_into(f, s);
  return {s.begin(), s.end()};
}

std::vector<std::string> mentioned_letters(const Wfo& w) {
  std::set<std::string> s;
  letters_into(w, s);
  return {s.begin(), s.end()};
}

}  // namespace wfoc
