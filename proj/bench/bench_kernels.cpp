#include <benchmark/benchmark.h>

#include "qheat/kernels.hpp"

using namespace qheat;

namespace {

const std::vector<Axis> kAxes3(3, Axis::Full);
const std::vector<int> kExp3{2, 0, 0};

void BM_TaperedSerial(benchmark::State& st) {
    const double X = double(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(tapered_power_sum_serial(kAxes3, kExp3, 7.5, X));
}

void BM_TaperedOmp(benchmark::State& st) {
    const double X = double(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(tapered_power_sum_omp(kAxes3, kExp3, 7.5, X));
}

Eigen::MatrixXd cov4() {
    Eigen::MatrixXd C = Eigen::MatrixXd::Identity(4, 4) * 2.0;
    C(0, 1) = C(1, 0) = 0.4;
    C(2, 3) = C(3, 2) = -0.3;
    return C;
}

void BM_QuadFormSerial(benchmark::State& st) {
    const auto C = cov4();
    const int R = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(quadratic_form_sum_serial(C, 0.05, R));
}

void BM_QuadFormOmp(benchmark::State& st) {
    const auto C = cov4();
    const int R = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(quadratic_form_sum_omp(C, 0.05, R));
}

}  // namespace

BENCHMARK(BM_TaperedSerial)->Arg(400)->Arg(2500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TaperedOmp)->Arg(400)->Arg(2500)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_QuadFormSerial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadFormOmp)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
