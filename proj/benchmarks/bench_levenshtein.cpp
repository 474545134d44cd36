#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "skoskit/linker.hpp"

using namespace skoskit;

namespace {

std::vector<std::pair<std::u32string, std::u32string>> pairs(std::size_t n, std::size_t max_length) {
  testkit::Rng rng(77);
  std::vector<std::pair<std::u32string, std::u32string>> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(testkit::random_u32(rng, max_length), testkit::random_u32(rng, max_length));
  return out;
}

void BM_Levenshtein(benchmark::State& state) {
  const auto input = pairs(1024, static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = input[i++ & 1023];
    benchmark::DoNotOptimize(link::levenshtein(a, b));
  }
}
BENCHMARK(BM_Levenshtein)->Arg(10)->Arg(30)->Arg(100);

void BM_BoundedLevenshtein(benchmark::State& state) {
  const auto input = pairs(1024, static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = input[i++ & 1023];
    benchmark::DoNotOptimize(link::bounded_levenshtein(a, b, link::distance_budget(0.21, std::max(a.size(), b.size()))));
  }
}
BENCHMARK(BM_BoundedLevenshtein)->Arg(10)->Arg(30)->Arg(100);

}  // namespace
