#include "wfoc/analysis.hpp"
#include "wfoc/decompose.hpp"
#include "wfoc/fo_compiler.hpp"
#include "wfoc/io.hpp"
#include "wfoc/parser.hpp"
#include "wfoc/wa_to_wfo.hpp"
#include "wfoc/wfo_compiler.hpp"

#include <benchmark/benchmark.h>

#include <string>

namespace {

using namespace wfoc;

WeightedAutomaton load(const std::string& file) {
  return read_automaton_file(std::string(WFOC_BENCH_DATA) + "/" + file).as_weighted();
}

void BM_AbstractSemanticsPoly4(benchmark::State& state) {
  const auto a = load("poly4.wa");
  Word w(static_cast<std::size_t>(state.range(0)), a.alphabet().at("a"));
  for (std::size_t i = w.size() / 2; i < w.size(); ++i) w[i] = a.alphabet().at("b");
  for (auto _ : state) benchmark::DoNotOptimize(abstract_semantics(a, w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AbstractSemanticsPoly4)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_CompileFoNestedQuantifiers(benchmark::State& state) {
  // Alternation depth grows with the argument.
  std::string text = "Pa(x0)";
  for (int i = static_cast<int>(state.range(0)); i >= 1; --i) {
    const std::string v = "x" + std::to_string(i), u = "x" + std::to_string(i - 1);
    text = (i % 2 ? "exists " : "forall ") + v + ". (" + u + " < " + v + " & Pb(" + v + ")) | (" + text + ")";
  }
  text = "exists x0. " + text;
  const Fo f = parse_fo(text);
  const Alphabet ab({"a", "b"});
  for (auto _ : state) benchmark::DoNotOptimize(compile_fo(f, ExtAlphabet(ab, {})));
}
BENCHMARK(BM_CompileFoNestedQuantifiers)->DenseRange(1, 4);

void BM_RoundTrip(benchmark::State& state, const char* file) {
  const auto a = load(file);
  for (auto _ : state) {
    const Wfo phi = is_unambiguous(a.nfa()) ? unambiguous_wa_to_wfo(a) : scc_unambiguous_to_wfo(a);
    benchmark::DoNotOptimize(compile_wfo(phi, a.alphabet()));
  }
}
BENCHMARK_CAPTURE(BM_RoundTrip, poly4, "poly4.wa");
BENCHMARK_CAPTURE(BM_RoundTrip, unamb3, "unamb3.wa");

void BM_GeqK(benchmark::State& state) {
  const auto a = load("amb3.wa");
  for (auto _ : state) benchmark::DoNotOptimize(build_a_geq_k(a.nfa(), static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_GeqK)->DenseRange(1, 5);

void BM_DecomposeAmb3(benchmark::State& state) {
  const auto a = load("amb3.wa");
  for (auto _ : state) benchmark::DoNotOptimize(decompose(a, 3));
}
BENCHMARK(BM_DecomposeAmb3);

void BM_AperiodicityIndex(benchmark::State& state, const char* file) {
  const auto a = load(file);
  for (auto _ : state) benchmark::DoNotOptimize(aperiodicity_index(a.nfa()));
}
BENCHMARK_CAPTURE(BM_AperiodicityIndex, poly4, "poly4.wa");
BENCHMARK_CAPTURE(BM_AperiodicityIndex, amb3, "amb3.wa");
BENCHMARK_CAPTURE(BM_AperiodicityIndex, fmax, "fmax.wa");

}  // namespace

BENCHMARK_MAIN();
