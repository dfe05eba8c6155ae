// Serial reference vs OpenMP kernels on the expressions the checks actually
// evaluate: the metrizing semispray of F2 and the biharmonic EL residual.
#include <benchmark/benchmark.h>

#include "jetvar/finsler.hpp"
#include "jetvar/kernels.hpp"
#include "jetvar/parser.hpp"
#include "jetvar/worked.hpp"

using namespace jetvar;

namespace {

Metric warped() {
  const JetSpace base(2, 1);
  ExprMatrix m = ExprMatrix::identity(2);
  m(1, 1) = parse("1 + x1^2", base);
  return Metric(std::move(m));
}

struct Workload {
  Tape tape;
  PointSet points;
};

const Workload& f2_semispray() {
  static const Workload w = [] {
    const FinslerCandidate f = build_f2(warped());
    const Semispray s = metrizing_semispray(f);
    return Workload{Tape(s.space(), s.coefficients()), sample_regular(s.space(), 20000, 1)};
  }();
  return w;
}

const Workload& l2_residual() {
  static const Workload w = [] {
    const Lagrangian l = build_l2(warped());
    const OneForm res = el_residual(l, Semispray(l.space()));
    return Workload{Tape(l.space(), res.components()), sample_regular(l.space(), 20000, 2)};
  }();
  return w;
}

void BM_Evaluate(benchmark::State& state, const Workload& (*load)(), bool parallel) {
  const Workload& w = load();
  const auto eval = parallel ? kernels::evaluate : kernels::evaluate_serial;
  for (auto _ : state) benchmark::DoNotOptimize(eval(w.tape, w.points));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.points.size()));
}

void BM_MaxDeviation(benchmark::State& state, bool parallel) {
  const Workload& w = f2_semispray();
  const Matrix a = kernels::evaluate(w.tape, w.points);
  Matrix b = a;
  for (double& v : b.data) v *= 1.0 + 1e-12;
  for (auto _ : state)
    benchmark::DoNotOptimize(parallel ? kernels::max_relative_deviation(a.data, b.data)
                                      : kernels::max_relative_deviation_serial(a.data, b.data));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.data.size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Evaluate, f2_semispray_serial, f2_semispray, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Evaluate, f2_semispray_omp, f2_semispray, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Evaluate, l2_residual_serial, l2_residual, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Evaluate, l2_residual_omp, l2_residual, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MaxDeviation, serial, false);
BENCHMARK_CAPTURE(BM_MaxDeviation, omp, true);

BENCHMARK_MAIN();
