// Serial reference vs OpenMP kernels for the two parallel workloads.

#include "nambu/darboux.hpp"
#include "nambu/dynamics.hpp"
#include "nambu/symmetry.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace nambu;

namespace {

const MoserPath& quarter_path() {
  static const MoserPath path = [] {
    const Polynomial f = Polynomial::constant(3, 1) + make_rational(1, 4) * Polynomial::variable(3, 1);
    return MoserPath(check_block_form(f * DifferentialForm::basis(3, {1, 2, 3})));
  }();
  return path;
}

DarbouxOptions darboux_options() {
  DarbouxOptions opts;
  opts.dt = 1e-3;
  opts.radius = 0.5;
  return opts;
}

std::vector<std::vector<double>> initial_states(std::size_t count) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> out(count, std::vector<double>(3));
  for (auto& x : out)
    for (auto& v : x) v = u(gen);
  return out;
}

void BM_DarbouxSerial(benchmark::State& state) {
  const auto samples = sample_ball(3, static_cast<std::size_t>(state.range(0)), 0.5, 0);
  for (auto _ : state) benchmark::DoNotOptimize(verify_darboux_serial(quarter_path(), samples, darboux_options(), 1e-6));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DarbouxParallel(benchmark::State& state) {
  const auto samples = sample_ball(3, static_cast<std::size_t>(state.range(0)), 0.5, 0);
  for (auto _ : state) benchmark::DoNotOptimize(verify_darboux(quarter_path(), samples, darboux_options(), 1e-6));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

const VectorField& top_field() {
  static const VectorField N = nambu_vector_field(builtin::symmetric_top(make_rational(2), make_rational(1)));
  return N;
}

void BM_BatchSerial(benchmark::State& state) {
  const auto x0s = initial_states(static_cast<std::size_t>(state.range(0)));
  const IntegratorConfig cfg{1e-3, 2.0, true};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_batch_serial(top_field(), x0s, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BatchParallel(benchmark::State& state) {
  const auto x0s = initial_states(static_cast<std::size_t>(state.range(0)));
  const IntegratorConfig cfg{1e-3, 2.0, true};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_batch(top_field(), x0s, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_DarbouxSerial)->Arg(20)->Arg(160)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DarbouxParallel)->Arg(20)->Arg(160)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatchSerial)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatchParallel)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
