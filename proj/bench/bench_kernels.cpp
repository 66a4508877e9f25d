// Serial reference vs OpenMP kernels: corpus evaluation and fragment analysis.
//
//   build/bench/bench_kernels --benchmark_min_time=0.2
//
// The parallel kernels must agree with the serial ones; the check runs once
// before any timing and aborts on a mismatch.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <cstdlib>
#include <iostream>

#include "claro/evaluator.hpp"
#include "claro/matcher.hpp"
#include "claro/template_dsl.hpp"

using namespace claro;

namespace {

const std::string kData = CLARO_DATA_DIR;

const std::vector<EvaluationCQ>& corpus() {
  static const auto c = load_fixture(kData + "/corpus/training_corpus.txt");
  return c;
}

const ComparisonTemplateSet& claro_set() {
  static const auto s = load_comparison_set(TemplateSetName::CLaRO, kData + "/claro_templates.txt");
  return s;
}

/// The shipped set repeated `copies` times under fresh ids, so the pairwise
/// fragment scan has enough work to split.
TemplateSet widened(int copies) {
  TemplateSet out;
  for (int c = 0; c < copies; ++c)
    for (auto t : claro_set().templates.templates) {
      t.ref.id += 1000 * c;
      out.templates.push_back(std::move(t));
    }
  return out;
}

EvaluateOptions chunker_options() {
  EvaluateOptions o;
  o.use_gold = false;  // run the chunker on every CQ
  return o;
}

void check_agreement() {
  const auto a = evaluate(corpus(), claro_set(), chunker_options());
  const auto b = evaluate_serial(corpus(), claro_set(), chunker_options());
  bool same = a.matched == b.matched && a.outcomes.size() == b.outcomes.size();
  for (std::size_t i = 0; same && i < a.outcomes.size(); ++i)
    same = a.outcomes[i].outcome == b.outcomes[i].outcome && a.outcomes[i].matched == b.outcomes[i].matched;
  const auto wide = widened(8);
  same = same && fragment_analysis(wide) == fragment_analysis_serial(wide);
  if (!same) {
    std::cerr << "parallel and serial kernels disagree\n";
    std::exit(1);
  }
}

void BM_evaluate_serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_serial(corpus(), claro_set(), chunker_options()));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus().size()));
}

void BM_evaluate_parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(corpus(), claro_set(), chunker_options()));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus().size()));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_fragments_serial(benchmark::State& state) {
  const auto set = widened(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fragment_analysis_serial(set));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(set.size()));
}

void BM_fragments_parallel(benchmark::State& state) {
  const auto set = widened(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fragment_analysis(set));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(set.size()));
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_evaluate_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_evaluate_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fragments_serial)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fragments_parallel)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  check_agreement();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
