#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "skoskit/serializer.hpp"
#include "skoskit/skos_graph.hpp"

using namespace skoskit;

namespace {

Thesaurus make(std::size_t descriptors) {
  testkit::Rng rng(11);
  testkit::ThesaurusShape shape;
  shape.descriptors = descriptors;
  shape.non_descriptors = descriptors / 2;
  shape.ad_terms = descriptors / 20;
  shape.broader = descriptors;
  shape.related = descriptors / 3;
  shape.notations = 50;
  shape.word_labels = true;
  return testkit::random_thesaurus(rng, shape);
}

void BM_ToSkos(benchmark::State& state) {
  const auto t = make(static_cast<std::size_t>(state.range(0)));
  const skos::UriPolicy policy;
  std::size_t triples = 0;
  for (auto _ : state) {
    const auto g = skos::to_skos(t, policy);
    triples = g.size();
    benchmark::DoNotOptimize(triples);
  }
  state.counters["triples"] = static_cast<double>(triples);
}
BENCHMARK(BM_ToSkos)->Arg(1000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_EmitNTriples(benchmark::State& state) {
  const auto g = skos::to_skos(make(static_cast<std::size_t>(state.range(0))), {});
  for (auto _ : state) benchmark::DoNotOptimize(serial::to_ntriples(g));
  state.counters["triples"] = static_cast<double>(g.size());
}
BENCHMARK(BM_EmitNTriples)->Arg(1000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_EmitTurtle(benchmark::State& state) {
  const auto g = skos::to_skos(make(static_cast<std::size_t>(state.range(0))), {});
  const auto ns = rdf::standard_namespaces();
  for (auto _ : state) benchmark::DoNotOptimize(serial::to_turtle(g, ns));
}
BENCHMARK(BM_EmitTurtle)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ParseNTriples(benchmark::State& state) {
  const auto text = serial::to_ntriples(skos::to_skos(make(static_cast<std::size_t>(state.range(0))), {}));
  for (auto _ : state) benchmark::DoNotOptimize(serial::parse_ntriples(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseNTriples)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
