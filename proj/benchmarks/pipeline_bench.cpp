#include <benchmark/benchmark.h>

#include "taxview/analysis.hpp"
#include "taxview/generate.hpp"
#include "taxview/ingest.hpp"
#include "taxview/validate.hpp"
#include "taxview/views.hpp"

namespace {

taxview::ArchitectureSnapshot sized(std::int64_t components) {
  taxview::GeneratorParams p;
  p.component_count = static_cast<std::size_t>(components);
  p.team_count = static_cast<std::size_t>(components / 25 + 1);
  p.dependency_density = 10;
  p.unresolved_rate = 0.2;
  p.seed = 2023;
  return taxview::generate(p);
}

void BM_Generate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sized(state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}
BENCHMARK(BM_Generate)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Validate(benchmark::State& state) {
  const auto s = sized(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(taxview::validate_snapshot(s));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.dependencies.size()));
}
BENCHMARK(BM_Validate)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Analyze(benchmark::State& state) {
  const auto s = sized(state.range(0));
  const auto cascade = taxview::default_cascade();
  for (auto _ : state) benchmark::DoNotOptimize(taxview::analyze(s, {}, cascade));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.dependencies.size()));
}
BENCHMARK(BM_Analyze)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SerializeBundle(benchmark::State& state) {
  const auto s = sized(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(taxview::serialize_bundle(s));
}
BENCHMARK(BM_SerializeBundle)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_ParseBundle(benchmark::State& state) {
  const auto doc = taxview::serialize_bundle(sized(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(taxview::parse_bundle(doc));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(doc.size()));
}
BENCHMARK(BM_ParseBundle)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_EmitViews(benchmark::State& state) {
  const auto m = taxview::casestudy_matrix_fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(taxview::emit_graph(m));
    benchmark::DoNotOptimize(taxview::emit_table(m, taxview::TableFormat::csv));
  }
}
BENCHMARK(BM_EmitViews);

}  // namespace

BENCHMARK_MAIN();
