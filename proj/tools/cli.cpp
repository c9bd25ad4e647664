#include "cli.hpp"

#include "wfoc/analysis.hpp"
#include "wfoc/decompose.hpp"
#include "wfoc/error.hpp"
#include "wfoc/eval.hpp"
#include "wfoc/fo_compiler.hpp"
#include "wfoc/io.hpp"
#include "wfoc/parser.hpp"
#include "wfoc/semiring.hpp"
#include "wfoc/wa_to_wfo.hpp"
#include "wfoc/wfo_compiler.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace wfoc::cli {

std::size_t sweep_cap() {
  const char* env = std::getenv("WFOC_MAXLEN");
  if (!env || !*env) return 8;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  return (*end == '\0' && v > 0) ? v : 8;
}

namespace {

struct Options {
  std::string automaton, formula, output, word, word_tokens, alphabet;
  std::string semiring = "multiset", aggregator = "sp", format = "text", mode = "auto", vars;
  std::string a, b;
  std::size_t k = 0;
  std::optional<std::size_t> maxlen;
  bool report = false;
};

bool is_formula_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".wfo") == 0;
}

// Header alphabet, then --alphabet, then the letters the formula mentions.
Alphabet formula_alphabet(const FormulaFile& file, const std::vector<std::string>& mentioned,
                          const std::string& override_text) {
  if (!override_text.empty()) {
    std::vector<std::string> names;
    std::string tok;
    std::istringstream in(override_text);
    while (in >> tok) {
      std::size_t start = 0;
      for (std::size_t comma; (comma = tok.find(',', start)) != std::string::npos; start = comma + 1) {
        if (comma > start) names.push_back(tok.substr(start, comma - start));
      }
      if (start < tok.size()) names.push_back(tok.substr(start));
    }
    return Alphabet(names);
  }
  if (file.alphabet) return Alphabet(*file.alphabet);
  if (mentioned.empty()) throw InputError("formula mentions no letter; give --alphabet");
  return Alphabet(mentioned);
}

Word read_word(const Alphabet& s, const Options& o) {
  if (!o.word_tokens.empty()) return s.parse_tokens(o.word_tokens);
  if (!s.single_char() && !o.word.empty()) throw InputError("letters are not single characters; use --word-tokens");
  return s.parse_word(o.word);
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty() || o.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw InputError("cannot write " + o.output);
  f << text;
}

std::string render(const WeightedAutomaton& a, const std::string& format) {
  return format == "dot" ? to_dot(a) : format_automaton(a);
}
std::string render(const Nfa& a, const std::string& format) {
  return format == "dot" ? to_dot(a) : format_automaton(a);
}

std::string aggregate(const Multiset& m, const Options& o) {
  if (o.aggregator == "ma") return format_ma(aggr_ma(m)) + "\n";
  const Semiring s = Semiring::builtin(o.semiring);
  if (s.kind() == SemiringKind::kMultiset) return m.to_string();
  return s.format(aggr_sp(s, m)) + "\n";
}

std::string index_text(const Nfa& a) {
  try {
    const auto m = aperiodicity_index(trim(a));
    return m ? "yes, index=" + std::to_string(*m) : "no";
  } catch (const LimitError&) {
    return "unknown (monoid cap)";
  }
}

std::string ambiguity_text(const Nfa& raw) {
  const Nfa a = trim(raw);
  const AmbiguityReport r = classify_ambiguity(a);
  std::string out = to_string(r.cls);
  switch (r.cls) {
    case AmbiguityClass::kFinitely:
      if (const auto k = exact_ambiguity_degree(a)) out += " (degree " + std::to_string(*k) + ")";
      break;
    case AmbiguityClass::kPolynomially:
      if (!r.determined) out += " (upper bound)";
      else if (is_scc_unambiguous(a)) out += " (SCC-unambiguous)";
      break;
    default:
      break;
  }
  return out;
}

int cmd_eval(const Options& o, std::ostream& out) {
  if (o.automaton.empty() == o.formula.empty()) throw InputError("eval needs exactly one of --automaton, --formula");
  if (!o.automaton.empty()) {
    const WeightedAutomaton a = read_automaton_file(o.automaton).as_weighted();
    out << aggregate(abstract_semantics(a, read_word(a.alphabet(), o)), o);
    return kExitOk;
  }
  const WfoFile f = read_wfo_file(o.formula);
  const Alphabet s = formula_alphabet(f.file, mentioned_letters(f.formula), o.alphabet);
  out << aggregate(eval_wfo(f.formula, s, read_word(s, o)), o);
  return kExitOk;
}

int cmd_compile(const Options& o, std::ostream& out) {
  const WfoFile f = read_wfo_file(o.formula);
  const Alphabet s = formula_alphabet(f.file, mentioned_letters(f.formula), o.alphabet);
  CompileReport report;
  const WeightedAutomaton a = compile_wfo(f.formula, s, &report);
  emit(o, out, render(a, o.format));
  if (!o.report) return kExitOk;
  out << report.to_string();
  out << "result: states=" << a.num_states() << " transitions=" << a.nfa().transitions().size() << '\n';
  out << "ambiguity: " << ambiguity_text(a.nfa()) << "; aperiodic: " << index_text(a.nfa()) << '\n';
  if (!report.bounds_hold()) {
    out << "index bound VIOLATED\n";
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_compile_fo(const Options& o, std::ostream& out) {
  const FoFile f = read_fo_file(o.formula);
  const Alphabet s = formula_alphabet(f.file, mentioned_letters(f.formula), o.alphabet);
  std::vector<std::string> vars;
  std::istringstream in(o.vars);
  for (std::string v; std::getline(in, v, ',');) {
    if (!v.empty()) vars.push_back(v);
  }
  const ClassifierDfa d = compile_fo(f.formula, ExtAlphabet(s, vars));
  emit(o, out, render(d.to_nfa(), o.format));
  return kExitOk;
}

int cmd_tologic(const Options& o, std::ostream& out) {
  const WeightedAutomaton a = read_automaton_file(o.automaton).as_weighted();
  Wfo phi;
  if (o.mode == "unambiguous" || (o.mode == "auto" && is_unambiguous(a.nfa()))) {
    phi = unambiguous_wa_to_wfo(a);
  } else {
    phi = scc_unambiguous_to_wfo(a);
  }
  emit(o, out, format_wfo_file(phi, a.alphabet().names()));
  return kExitOk;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  const WeightedAutomaton a = read_automaton_file(o.automaton).as_weighted();
  const DecomposeResult r = decompose(a, o.k);
  const std::string prefix = o.output.empty() ? "decomposed" : o.output;
  const char* ext = o.format == "dot" ? ".dot" : ".wa";
  for (std::size_t l = 0; l < r.parts.size(); ++l) {
    std::ofstream f(prefix + "." + std::to_string(l + 1) + ext);
    if (!f) throw InputError("cannot write " + prefix + "." + std::to_string(l + 1) + ext);
    f << render(r.parts[l], o.format);
  }
  std::ofstream rep(prefix + ".report.txt");
  rep << r.to_string();
  out << r.to_string();
  return r.bounds_hold() ? kExitOk : kExitVerification;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const Nfa a = read_automaton_file(o.automaton).nfa;
  out << "ambiguity: " << ambiguity_text(a) << "; aperiodic: " << index_text(a) << '\n';
  return kExitOk;
}

struct Evaluator {
  std::optional<WeightedAutomaton> automaton;
  std::optional<WfoFile> formula;

  Multiset operator()(const Alphabet& s, const Word& w) const {
    if (automaton) return abstract_semantics(*automaton, w);
    return eval_wfo(formula->formula, s, w);
  }
};

Evaluator load_side(const std::string& path) {
  Evaluator e;
  if (is_formula_path(path)) {
    e.formula = read_wfo_file(path);
  } else {
    e.automaton = read_automaton_file(path).as_weighted();
  }
  return e;
}

int cmd_equiv(const Options& o, std::ostream& out, std::ostream& err) {
  const Evaluator x = load_side(o.a), y = load_side(o.b);
  std::optional<Alphabet> s;
  if (x.automaton) s = x.automaton->alphabet();
  if (y.automaton) {
    if (s && !(*s == y.automaton->alphabet())) throw InputError("the two automata have different alphabets");
    s = y.automaton->alphabet();
  }
  if (!s) s = formula_alphabet(x.formula->file, mentioned_letters(x.formula->formula), o.alphabet);
  std::size_t maxlen = o.maxlen.value_or(sweep_cap());
  if (maxlen > sweep_cap()) {
    err << "maxlen " << maxlen << " capped to WFOC_MAXLEN=" << sweep_cap() << '\n';
    maxlen = sweep_cap();
  }
  // Shortlex order, so the first difference reported is the least one.
  for (const Word& w : all_words(s->size(), 1, maxlen)) {
    const Multiset l = x(*s, w), r = y(*s, w);
    if (l == r) continue;
    out << "DIFFER on '" << s->format(w) << "'\n--- " << o.a << '\n' << l.to_string() << "--- " << o.b << '\n'
        << r.to_string();
    return kExitVerification;
  }
  out << "EQUIV up to " << maxlen << '\n';
  return kExitOk;
}

int cmd_dot(const Options& o, std::ostream& out) {
  const ParsedAutomaton p = read_automaton_file(o.automaton);
  emit(o, out, p.weighted() ? to_dot(p.as_weighted()) : to_dot(p.nfa));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Weighted first-order logic and aperiodic weighted automata"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"text", "dot"};

  auto* eval = app.add_subcommand("eval", "Evaluate an automaton or wFO formula on a word");
  eval->add_option("--automaton", o.automaton, "Automaton file")->check(CLI::ExistingFile);
  eval->add_option("--formula", o.formula, "wFO formula file")->check(CLI::ExistingFile);
  eval->add_option("--word", o.word, "Word as concatenated single-character letters");
  eval->add_option("--word-tokens", o.word_tokens, "Word as space-separated letter names");
  eval->add_option("--alphabet", o.alphabet, "Alphabet for formulas without an alphabet header");
  eval->add_option("--semiring", o.semiring)
      ->check(CLI::IsMember({"natural", "boolean", "minplus", "maxplus", "languages", "multiset"}));
  eval->add_option("--aggregator", o.aggregator)->check(CLI::IsMember({"sp", "ma"}));

  auto* compile = app.add_subcommand("compile", "Compile a wFO sentence to a weighted automaton");
  compile->add_option("--formula", o.formula)->required()->check(CLI::ExistingFile);
  compile->add_option("-o,--output", o.output);
  compile->add_option("--alphabet", o.alphabet);
  compile->add_option("--format", o.format)->check(CLI::IsMember(formats));
  compile->add_flag("--report", o.report, "Print per-stage sizes and index bounds");

  auto* compile_fo_cmd = app.add_subcommand("compile-fo", "Compile an FO formula to a three-way classifier");
  compile_fo_cmd->add_option("--formula", o.formula)->required()->check(CLI::ExistingFile);
  compile_fo_cmd->add_option("--vars", o.vars, "Comma-separated free variables");
  compile_fo_cmd->add_option("-o,--output", o.output);
  compile_fo_cmd->add_option("--alphabet", o.alphabet);
  compile_fo_cmd->add_option("--format", o.format)->check(CLI::IsMember(formats));

  auto* tologic = app.add_subcommand("tologic", "Translate an automaton to a wFO sentence");
  tologic->add_option("--automaton", o.automaton)->required()->check(CLI::ExistingFile);
  tologic->add_option("-o,--output", o.output);
  tologic->add_option("--mode", o.mode)->check(CLI::IsMember({"auto", "unambiguous", "scc"}));

  auto* decomp = app.add_subcommand("decompose", "Split a finitely ambiguous automaton into unambiguous ones");
  decomp->add_option("--automaton", o.automaton)->required()->check(CLI::ExistingFile);
  decomp->add_option("-K", o.k, "Ambiguity bound (0: detect)");
  decomp->add_option("-o,--output", o.output, "Output prefix");
  decomp->add_option("--format", o.format)->check(CLI::IsMember(formats));

  auto* classify = app.add_subcommand("classify", "Ambiguity class and aperiodicity");
  classify->add_option("--automaton", o.automaton)->required()->check(CLI::ExistingFile);

  auto* equiv = app.add_subcommand("equiv", "Compare abstract semantics on all short words");
  equiv->add_option("--a", o.a)->required()->check(CLI::ExistingFile);
  equiv->add_option("--b", o.b)->required()->check(CLI::ExistingFile);
  equiv->add_option("--maxlen", o.maxlen);
  equiv->add_option("--alphabet", o.alphabet);

  auto* dot = app.add_subcommand("dot", "Graphviz export");
  dot->add_option("--automaton", o.automaton)->required()->check(CLI::ExistingFile);
  dot->add_option("-o,--output", o.output);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (eval->parsed()) return cmd_eval(o, out);
    if (compile->parsed()) return cmd_compile(o, out);
    if (compile_fo_cmd->parsed()) return cmd_compile_fo(o, out);
    if (tologic->parsed()) return cmd_tologic(o, out);
    if (decomp->parsed()) return cmd_decompose(o, out);
    if (classify->parsed()) return cmd_classify(o, out);
    if (equiv->parsed()) return cmd_equiv(o, out, err);
    if (dot->parsed()) return cmd_dot(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace wfoc::cli
