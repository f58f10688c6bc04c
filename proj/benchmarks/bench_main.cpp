#include <benchmark/benchmark.h>

#include <random>

#include "brw/coding.hpp"
#include "brw/coloring.hpp"
#include "brw/degrees.hpp"
#include "brw/diagram.hpp"
#include "brw/embed.hpp"
#include "brw/oracle.hpp"
#include "brw/semigroup.hpp"
#include "brw/structure.hpp"

namespace {

void BM_GrowSplit(benchmark::State& state) {
  const int rounds = static_cast<int>(state.range(0));
  for (auto _ : state) {
    brw::TreeCoding c = brw::grow_devlin(rounds);
    benchmark::DoNotOptimize(c.leaf_count());
  }
  state.SetItemsProcessed(state.iterations() * rounds);
}
BENCHMARK(BM_GrowSplit)->Arg(64)->Arg(256)->Arg(1024);

void BM_GrowGraph(benchmark::State& state) {
  const int rounds = static_cast<int>(state.range(0));
  for (auto _ : state) {
    brw::TreeCoding c = brw::grow_rado(rounds);
    benchmark::DoNotOptimize(c.leaf_count());
  }
  state.SetItemsProcessed(state.iterations() * rounds);
}
BENCHMARK(BM_GrowGraph)->Arg(32)->Arg(128);

void BM_EnumerateEmbeddings(benchmark::State& state) {
  brw::Structure path = brw::make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  brw::Structure big = brw::grow_rado(24).emit(brw::Reduct::base);
  for (auto _ : state) {
    long n = 0;
    brw::for_each_embedding(path, big, [&](const brw::Tuple&) {
      ++n;
      return true;
    });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_EnumerateEmbeddings);

void BM_PairDegree(benchmark::State& state) {
  for (auto _ : state) {
    brw::DegreeResult r = brw::stabilized_degree(brw::make_chain(2), brw::TreeCoding::devlin(),
                                                 brw::geometric_checkpoints(4, 64), 3);
    benchmark::DoNotOptimize(r.degree);
  }
}
BENCHMARK(BM_PairDegree);

void BM_ChainOracle(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brw::devlin_oracle(k));
}
BENCHMARK(BM_ChainOracle)->Arg(4)->Arg(5);

void BM_ExpansionColoring(benchmark::State& state) {
  const int rounds = static_cast<int>(state.range(0));
  brw::TreeCoding c = brw::grow_devlin(rounds);
  for (auto _ : state) {
    brw::Coloring col = brw::expansion_coloring_of(brw::make_chain(3), c);
    benchmark::DoNotOptimize(col.color_count());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(c.leaf_count()));
}
BENCHMARK(BM_ExpansionColoring)->Arg(30)->Arg(60);

void BM_ColoringDiagram(benchmark::State& state) {
  brw::TreeCoding c = brw::grow_devlin(30);
  std::vector<brw::Structure> shapes;
  std::vector<brw::Coloring> colorings;
  for (int k = 1; k <= 3; ++k) {
    shapes.push_back(brw::make_chain(k));
    colorings.push_back(brw::expansion_coloring_of(shapes.back(), c));
  }
  for (auto _ : state) {
    brw::Diagram d = brw::diagram_from_colorings(shapes, colorings);
    benchmark::DoNotOptimize(d.level_count());
  }
}
BENCHMARK(BM_ColoringDiagram);

void BM_DiagramRoundTrip(benchmark::State& state) {
  std::mt19937 rng(11);
  for (auto _ : state) {
    brw::Diagram d = brw::random_diagram(rng);
    std::vector<int> sizes;
    for (int n = 0; n < d.level_count(); ++n)
      sizes.push_back(static_cast<int>(d.connectors.at({n, n}).front().size()));
    std::vector<brw::Structure> exhaustion = brw::chain_exhaustion(sizes);
    brw::Diagram back =
        brw::diagram_of_expansion(brw::expansion_from_diagram(d, exhaustion), exhaustion);
    benchmark::DoNotOptimize(brw::isomorphic(d, back).has_value());
  }
}
BENCHMARK(BM_DiagramRoundTrip);

void BM_SemigroupEnumerate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::vector<brw::SemigroupTable> tables = brw::enumerate_semigroups(n);
    benchmark::DoNotOptimize(tables.size());
  }
}
BENCHMARK(BM_SemigroupEnumerate)->Arg(3)->Arg(4);

void BM_Semifacts(benchmark::State& state) {
  std::mt19937 rng(5);
  std::vector<brw::SemigroupTable> tables;
  for (int i = 0; i < 64; ++i) tables.push_back(brw::sample_semigroup(4, rng));
  for (auto _ : state)
    for (const brw::SemigroupTable& t : tables)
      benchmark::DoNotOptimize(brw::verify_semifacts(t).all_pass());
  state.SetItemsProcessed(state.iterations() * static_cast<long>(tables.size()));
}
BENCHMARK(BM_Semifacts);

}  // namespace

BENCHMARK_MAIN();
