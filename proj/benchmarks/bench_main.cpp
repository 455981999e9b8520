#include <benchmark/benchmark.h>

#include "dstokes/assembly.hpp"
#include "dstokes/boundary_data.hpp"
#include "dstokes/errors.hpp"
#include "dstokes/manufactured.hpp"
#include "dstokes/solver.hpp"

using namespace dstokes;

namespace {

Mesh mesh_at(int level) {
  Mesh m = build_domain(DomainId::nonconvex);
  for (int i = 0; i < level; ++i) m = refine_uniform(m);
  return m;
}

ElementPairing pairing_of(int64_t k) { return k == 0 ? ElementPairing::taylor_hood() : ElementPairing::mini(); }

struct Setup {
  Mesh mesh;
  DofMap dofs;
  SingularSolution exact;
  BoundaryTrace trace;
};

Setup setup(int level, ElementPairing pairing) {
  Mesh m = mesh_at(level);
  DofMap d = build_dofmap(m, pairing);
  SingularSolution s(0.5, m.polygon().corner_angle);
  const auto u = BoundaryDatum::from_field(m.polygon(), [s](const Point2& x) { return s.velocity(x); }, 1.0, true);
  BoundaryTrace t = project_l2(u, m, d);
  return {std::move(m), std::move(d), s, std::move(t)};
}

void BM_Refine(benchmark::State& state) {
  const Mesh m = mesh_at(static_cast<int>(state.range(0)) - 1);
  for (auto _ : state) benchmark::DoNotOptimize(refine_uniform(m));
}
BENCHMARK(BM_Refine)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_AssembleBordered(benchmark::State& state) {
  const auto s = setup(static_cast<int>(state.range(0)), pairing_of(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_bordered_system(s.mesh, s.dofs, s.trace, 1.0));
  state.counters["dofs"] = s.dofs.n_velocity() + s.dofs.n_pressure;
}
BENCHMARK(BM_AssembleBordered)->ArgsProduct({{3, 4, 5, 6}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_ProjectL2(benchmark::State& state) {
  const auto s = setup(static_cast<int>(state.range(0)), ElementPairing::taylor_hood());
  const auto u = BoundaryDatum::from_field(s.mesh.polygon(), [e = s.exact](const Point2& x) { return e.velocity(x); },
                                           1.0, true);
  for (auto _ : state) benchmark::DoNotOptimize(project_l2(u, s.mesh, s.dofs));
}
BENCHMARK(BM_ProjectL2)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_SolveDirect(benchmark::State& state) {
  const auto s = setup(static_cast<int>(state.range(0)), pairing_of(state.range(1)));
  const auto sys = assemble_bordered_system(s.mesh, s.dofs, s.trace, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve(sys, {}));
  state.counters["dofs"] = sys.size();
}
BENCHMARK(BM_SolveDirect)->ArgsProduct({{3, 4, 5, 6}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_SolveMinres(benchmark::State& state) {
  const auto s = setup(static_cast<int>(state.range(0)), ElementPairing::taylor_hood());
  const auto sys = assemble_bordered_system(s.mesh, s.dofs, s.trace, 1.0);
  SolverOptions opts;
  opts.method = SolveMethod::minres_uzawa;
  int iterations = 0;
  for (auto _ : state) {
    auto r = solve(sys, opts);
    iterations = r.second.iterations;
    benchmark::DoNotOptimize(r);
  }
  state.counters["iterations"] = iterations;
}
BENCHMARK(BM_SolveMinres)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

void BM_L2Error(benchmark::State& state) {
  const auto s = setup(static_cast<int>(state.range(0)), ElementPairing::taylor_hood());
  const auto sol = solve(assemble_bordered_system(s.mesh, s.dofs, s.trace, 1.0), {}).first;
  for (auto _ : state) benchmark::DoNotOptimize(l2_velocity_error(sol, s.exact, s.mesh, s.dofs));
}
BENCHMARK(BM_L2Error)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
