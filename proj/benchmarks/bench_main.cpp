#include <benchmark/benchmark.h>

#include "bayesel/el_solver.hpp"
#include "bayesel/mcele.hpp"
#include "bayesel/models/normal_toy.hpp"
#include "bayesel/models/rat.hpp"
#include "bayesel/rng.hpp"

namespace {

using namespace bayesel;

Matrix moment_constraints(int n, int m, std::uint64_t seed) {
  RngStream rng(seed);
  Matrix c(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) c(i, j) = rng.normal();
  // Pull columns toward zero mean so the problem stays feasible.
  for (int j = 0; j < m; ++j) c.col(j).array() -= c.col(j).mean() * 0.9;
  return c;
}

void BM_SolveEl(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const Matrix c = moment_constraints(n, m, 7);
  for (auto _ : state) {
    const ELSolution sol = solve_el(c);
    benchmark::DoNotOptimize(sol.log_el);
  }
}
BENCHMARK(BM_SolveEl)->Args({50, 2})->Args({200, 2})->Args({1000, 2})->Args({200, 8});

void BM_ToyPosterior(benchmark::State& state) {
  const Vector x = normal_toy_data(3, 10, 0.0, 1.0);
  const ElModel model = make_normal_toy(x);
  ThetaSplit theta{Vector::Constant(1, 0.1), Vector::Constant(1, 1.2)};
  for (auto _ : state) {
    const double lp = log_posterior_unnorm(model, theta);
    benchmark::DoNotOptimize(lp);
  }
}
BENCHMARK(BM_ToyPosterior);

void BM_RatTrial(benchmark::State& state) {
  const RatData data = default_rat_data();
  const Vector st = rat_init_state(data);
  const Vector t1 = st.segment(0, 30), t2 = st.segment(30, 30);
  for (auto _ : state) {
    const auto trial = rat_solve_trial(data, t1, t2);
    benchmark::DoNotOptimize(trial.feasible);
  }
}
BENCHMARK(BM_RatTrial);

void BM_RatFullCold(benchmark::State& state) {
  const RatData data = default_rat_data();
  Vector st = rat_init_state(data);
  st[0] += 0.2;  // step off the exact maximum so the solver does real work
  const Vector t1 = st.segment(0, 30), t2 = st.segment(30, 30);
  for (auto _ : state) {
    const auto sol = rat_solve_full(data, t1, t2, st[64]);
    benchmark::DoNotOptimize(sol.log_el);
  }
}
BENCHMARK(BM_RatFullCold);

void BM_RatFullWarm(benchmark::State& state) {
  const RatData data = default_rat_data();
  Vector st = rat_init_state(data);
  st[0] += 0.2;
  const Vector t1 = st.segment(0, 30), t2 = st.segment(30, 30);
  const Vector warm = rat_solve_full(data, t1, t2, st[64]).lambda;
  for (auto _ : state) {
    const auto sol = rat_solve_full(data, t1, t2, st[64], &warm);
    benchmark::DoNotOptimize(sol.log_el);
  }
}
BENCHMARK(BM_RatFullWarm);

}  // namespace

BENCHMARK_MAIN();
