#include <benchmark/benchmark.h>

#include "ghostpin/engine.hpp"
#include "ghostpin/fourier.hpp"
#include "ghostpin/objects.hpp"
#include "ghostpin/profile.hpp"
#include "ghostpin/spdc.hpp"

namespace {

using namespace ghostpin;

ValidatedSetup bench_setup(PmModel pm = PmModel::sinc) {
  OpticalSetup s;
  s.lambda_p = 350e-9;
  s.lambda_s = 700e-9;
  s.lambda_i = 700e-9;
  s.l_z = 3e-3;
  s.sigma_p = 167e-6;
  s.d = 0.3;
  s.z_s = 1.2;
  s.z_i = 1.5;
  s.pm_model = pm;
  return validate_setup(s);
}

void BM_TransformAxis(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Field2D field(n, n);
  for (std::size_t i = 0; i < field.data.size(); ++i)
    field.data[i] = {static_cast<double>(i % 97), 0.5};
  for (auto _ : state) {
    transform_axis(field, Axis::idler, FftDirection::forward, 1);
    benchmark::DoNotOptimize(field.data.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n));
}
BENCHMARK(BM_TransformAxis)->Arg(512)->Arg(1024)->Arg(2048);

void BM_TransformAxisThreaded(benchmark::State& state) {
  Field2D field(2048, 2048);
  for (std::size_t i = 0; i < field.data.size(); ++i)
    field.data[i] = {static_cast<double>(i % 89), -0.25};
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    transform_axis(field, Axis::signal, FftDirection::forward, threads);
    benchmark::DoNotOptimize(field.data.data());
  }
}
BENCHMARK(BM_TransformAxisThreaded)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_BiphotonAmplitude(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ValidatedSetup s = bench_setup();
  const SpectralGrid grid = make_grid(n, n, 30e-3, 30e-3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spdc_amplitude(grid, s, 4).field.data.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n));
}
BENCHMARK(BM_BiphotonAmplitude)->Arg(1024)->Arg(2048);

void BM_JspPipeline(benchmark::State& state) {
  const ValidatedSetup s = bench_setup();
  const auto n = static_cast<std::size_t>(state.range(0));
  const SpectralGrid grid = make_grid(n, n / 2, 40e-3, 20e-3);
  const BiphotonAmplitude psi = spdc_amplitude(grid, s, 4);
  const ObjectTransmission object = double_slit(940e-6, 50e-6, grid);
  for (auto _ : state) {
    const JspResult jsp = compute_jsp(psi, object, s, 4);
    benchmark::DoNotOptimize(jsp.values.data());
  }
}
BENCHMARK(BM_JspPipeline)->Arg(2048)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_GaussianFit(benchmark::State& state) {
  Profile1D p;
  for (int i = 0; i < 4096; ++i) {
    const double x = -10e-3 + 20e-3 * i / 4095.0;
    p.x.push_back(x);
    p.value.push_back(std::exp(-(x - 1e-3) * (x - 1e-3) / (2 * 0.6e-3 * 0.6e-3)));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_gaussian(p).width);
  }
}
BENCHMARK(BM_GaussianFit);

}  // namespace

BENCHMARK_MAIN();
