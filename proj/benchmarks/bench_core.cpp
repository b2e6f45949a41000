#include <random>

#include <benchmark/benchmark.h>

#include <covsys/crossed.hpp>
#include <covsys/galilei.hpp>
#include <covsys/gns.hpp>
#include <covsys/multipliers.hpp>
#include <covsys/qst.hpp>

using namespace covsys;

namespace
{

// omega_{x,y} = delta_{x,y} on the Heisenberg group Z_n x Z_n.
CovariantState delta_state(long n)
{
    const PhaseCocycle p = heisenberg_cocycle(n);
    const CovarianceSystem sys(Algebra::scalars(), p.group());
    const Index order = p.group().order();
    std::vector<Complex> values(order * order, 0.0);
    for (Index x = 0; x < order; ++x)
        values[x * order + x] = 1.0;
    return CovariantState(sys, values, left_to_right(p.to_left()));
}

void BM_ValidateLeftHeisenberg(benchmark::State &state)
{
    const LeftMultiplier xi = heisenberg_cocycle(state.range(0)).to_left();
    for (auto _ : state)
        benchmark::DoNotOptimize(validate_left(xi));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ValidateLeftHeisenberg)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_ValidatePhaseCocycle(benchmark::State &state)
{
    const PhaseCocycle p = heisenberg_cocycle(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(validate_phase_cocycle(p));
}
BENCHMARK(BM_ValidatePhaseCocycle)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_GnsBuild(benchmark::State &state)
{
    const CovariantState omega = delta_state(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(gns_build(omega));
}
BENCHMARK(BM_GnsBuild)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_CrossedConvolve(benchmark::State &state)
{
    const CovariantState omega = delta_state(state.range(0));
    const CrossedProduct cp = CrossedProduct::from_state(omega);
    std::mt19937_64 rng(1);
    const auto f = cp.random(rng), g = cp.random(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(cp.convolve(f, g));
}
BENCHMARK(BM_CrossedConvolve)->DenseRange(2, 5);

void BM_SpinDemo(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(spin_demo(1.0, Eigen::Vector3d(0.3, -0.2, 0.1)));
}
BENCHMARK(BM_SpinDemo)->Unit(benchmark::kMillisecond);

void BM_QstMomentsViaKernel(benchmark::State &state)
{
    QstParams p;
    p.atoms.clear();
    const auto atoms = static_cast<double>(state.range(0));
    for (long k = 0; k < state.range(0); ++k)
        p.atoms.push_back(Atom{lorentz_boost(1 + k % 3, 0.5 * static_cast<double>(k) / atoms), 1.0 / atoms});
    const QstModel model(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(moments_via_kernel(model));
}
BENCHMARK(BM_QstMomentsViaKernel)->RangeMultiplier(4)->Range(1, 64);

void BM_QstGram(benchmark::State &state)
{
    const QstModel model{QstParams{}};
    std::mt19937_64 rng(2);
    const auto pts = random_weyl_points(static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(gram_positivity(model, pts));
}
BENCHMARK(BM_QstGram)->RangeMultiplier(2)->Range(8, 128);

} // namespace

BENCHMARK_MAIN();
