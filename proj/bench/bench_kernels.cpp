// Kernel timings: serial reference scans against the incremental ones, and
// bagged prediction on one thread against all available threads.
//
//   tilo_bench [vertices-per-block]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "tilo/ordering.hpp"
#include "tilo/semisup.hpp"
#include "tilo/synth.hpp"

using namespace tilo;

namespace {

template <class F>
double seconds(F&& f, int reps) {
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

void report(const char* name, double reference, double fast) {
  std::printf("%-28s reference %10.3f ms   fast %10.3f ms   speedup %7.1fx\n", name, 1e3 * reference, 1e3 * fast,
              reference / fast);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t block = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 15;

  SynthSpec spec;
  spec.block_sizes = {block, block, block, block};
  spec.p_in = 0.3;
  spec.p_out = 0.02;
  spec.label_fraction = 0.3;
  spec.seed = 7;
  const SynthData data = synth_planted(spec);
  const auto components = connected_components(data.graph);
  const auto main_part = induced_subgraph(data.graph, components.blocks.front());
  const WeightedGraph& g = main_part.graph;
  std::printf("graph: %zu vertices, %zu edges (largest component)\n", g.vertex_count(), g.edge_count());

  const Ordering start = random_ordering(g.vertex_count(), 1);
  const int reps = 3;
  report("first-improvement move", seconds([&] { (void)improving_move_reference(g, start); }, reps),
         seconds([&] { (void)improving_move(g, start); }, reps));
  report("steepest move", seconds([&] { (void)steepest_move_reference(g, start); }, reps),
         seconds([&] { (void)steepest_move(g, start); }, reps));

  const Ordering settled = tilo_fixpoint(g, 1);
  report("fixed-point certificate", seconds([&] { (void)improving_move_reference(g, settled); }, reps),
         seconds([&] { (void)steepest_move(g, settled); }, reps));
  std::printf("%-28s %10.3f ms\n", "fixed point, steepest", 1e3 * seconds([&] { (void)tilo_fixpoint(g, 2); }, reps));

  const int threads = omp_get_max_threads();
  const BagConfig cfg{25, 0.5, 3};
  omp_set_num_threads(1);
  const double serial = seconds([&] { (void)bagged_predict(data.graph, data.labels, cfg); }, 1);
  omp_set_num_threads(threads);
  const double parallel = seconds([&] { (void)bagged_predict(data.graph, data.labels, cfg); }, 1);
  std::printf("%-28s 1 thread %10.3f ms   %d threads %10.3f ms   speedup %5.2fx\n", "bagged prediction, 25 runs",
              1e3 * serial, threads, 1e3 * parallel, serial / parallel);
  return 0;
}
