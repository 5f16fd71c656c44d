#include <benchmark/benchmark.h>

#include "spherefit/designs.hpp"
#include "spherefit/estimator.hpp"
#include "spherefit/experiments.hpp"
#include "spherefit/filters.hpp"
#include "spherefit/kernels.hpp"
#include "spherefit/numerics.hpp"
#include "spherefit/quadrature.hpp"

using namespace spherefit;

namespace {

const std::filesystem::path kData = SPHEREFIT_BENCH_DATA_DIR;

PointSet design(int t) { return load_tdesign(design_file(kData, t), t); }

// t-design strengths, so sizes run 12 .. 1130
void sizes(benchmark::internal::Benchmark* b) {
    for (int t : {3, 7, 15, 31, 47}) b->Arg(t);
}

void BM_KernelMatrix(benchmark::State& state) {
    const auto pts = design(static_cast<int>(state.range(0)));
    const auto kernel = KernelSpec::wendland_4_1();
    for (auto _ : state) benchmark::DoNotOptimize(kernel_matrix(kernel, pts));
    state.counters["n"] = static_cast<double>(pts.size());
}
BENCHMARK(BM_KernelMatrix)->Apply(sizes)->Unit(benchmark::kMillisecond);

void BM_QuadratureWeights(benchmark::State& state) {
    const auto pts = sample_random(static_cast<std::size_t>(state.range(0)), 7);
    const int s = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(compute_weights(pts, s));
}
BENCHMARK(BM_QuadratureWeights)->Args({200, 5})->Args({500, 8})->Args({1130, 10})->Unit(benchmark::kMillisecond);

void BM_Filter(benchmark::State& state) {
    const auto pts = design(static_cast<int>(state.range(0)));
    const WsfSystem sys(KernelSpec::wendland_4_1(), tdesign_rule(pts, static_cast<int>(state.range(0))));
    const Vector y = target_function(pts);
    const auto family = static_cast<FilterFamily>(state.range(1));
    const FilterSpec spec = family == FilterFamily::tikhonov    ? FilterSpec::tikhonov(1e-3 * sys.kappa())
                            : family == FilterFamily::landweber ? FilterSpec::landweber_steps(100)
                                                                : FilterSpec::cutoff(1e-3 * sys.kappa());
    if (family == FilterFamily::cutoff) sys.eig();
    for (auto _ : state) benchmark::DoNotOptimize(sys.coefficients(spec, y));
    state.SetLabel(filter_name(family));
}
BENCHMARK(BM_Filter)
    ->ArgsProduct({{15, 31, 47},
                   {static_cast<int>(FilterFamily::tikhonov), static_cast<int>(FilterFamily::landweber),
                    static_cast<int>(FilterFamily::cutoff)}})
    ->Unit(benchmark::kMillisecond);

void BM_Eigendecomposition(benchmark::State& state) {
    const auto pts = design(static_cast<int>(state.range(0)));
    const Matrix k = kernel_matrix(KernelSpec::wendland_4_1(), pts);
    for (auto _ : state) benchmark::DoNotOptimize(sym_eig(k));
}
BENCHMARK(BM_Eigendecomposition)->Arg(15)->Arg(31)->Arg(47)->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State& state) {
    const auto pts = design(static_cast<int>(state.range(0)));
    const auto model = fit_ki(LabeledData(pts, target_function(pts)), KernelSpec::wendland_4_1());
    const auto test = make_testset(4000, 3);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(model, test.points));
    state.SetItemsProcessed(state.iterations() * 4000);
}
BENCHMARK(BM_Evaluate)->Arg(15)->Arg(47)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
