#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "skoskit/linker.hpp"
#include "skoskit/text.hpp"

using namespace skoskit;

namespace {

struct Setup {
  Thesaurus thesaurus;
  link::TargetVocabulary target;
};

Setup make(std::size_t n) {
  testkit::Rng rng(12);
  testkit::ThesaurusShape shape;
  shape.descriptors = n;
  shape.non_descriptors = 0;
  shape.ad_terms = 0;
  shape.broader = n / 2;
  shape.related = 0;
  shape.word_labels = true;
  Setup s{testkit::random_thesaurus(rng, shape), {"bench", rdf::Iri("http://target.example/"), {}}};
  std::vector<std::string> labels;
  for (const auto& [id, term] : s.thesaurus.terms()) labels.push_back(*term.label(s.thesaurus.pivot()));
  for (std::size_t i = 0; i < n; ++i) {
    std::string label = i % 2 ? labels[i % labels.size()] + "n" : testkit::random_phrase(rng);
    s.target.entries.push_back({rdf::Iri("http://target.example/e" + std::to_string(i)), s.thesaurus.pivot(), label, true});
  }
  return s;
}

void BM_DiscoverLinks(benchmark::State& state) {
  const auto s = make(static_cast<std::size_t>(state.range(0)));
  link::DiscoveryOptions options;
  options.prune = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(link::discover_links(s.thesaurus, {}, s.target, options));
}
BENCHMARK(BM_DiscoverLinks)
    ->Args({1000, 0})
    ->Args({1000, 1})
    ->Args({8000, 1})
    ->ArgNames({"n", "prune"})
    ->Unit(benchmark::kMillisecond);

}  // namespace
