//
// serial vs OpenMP kernel benchmarks
//
// Run:  ./kronkit_bench [--benchmark_filter=kron]
// Pairs of lines (xxx/serial vs xxx/omp) compare the reference kernel
// against the parallel one on identical inputs.
//

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "kronkit/kernels.hpp"

using kronkit::index_t;
namespace kk = kronkit::kernels;

namespace {

std::vector<double> random_buf(index_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = dist(rng);
    return v;
}

void bm_kron_serial(benchmark::State& state) {
    const index_t n = state.range(0);
    const auto b = random_buf(n * n, 1);
    const auto c = random_buf(n * n, 2);
    std::vector<double> out(static_cast<std::size_t>(n * n * n * n));
    for (auto _ : state) {
        kk::serial::kron(b.data(), n, n, c.data(), n, n, out.data());
        benchmark::DoNotOptimize(out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * n * n * n * n);
}

void bm_kron_omp(benchmark::State& state) {
    const index_t n = state.range(0);
    const auto b = random_buf(n * n, 1);
    const auto c = random_buf(n * n, 2);
    std::vector<double> out(static_cast<std::size_t>(n * n * n * n));
    for (auto _ : state) {
        kk::par::kron(b.data(), n, n, c.data(), n, n, out.data());
        benchmark::DoNotOptimize(out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * n * n * n * n);
}

void bm_rearrange_serial(benchmark::State& state) {
    const index_t n = state.range(0);
    const auto a = random_buf(n * n * n * n, 3);
    std::vector<double> out(a.size());
    for (auto _ : state) {
        kk::serial::rearrange(a.data(), n, n, n, n, out.data());
        benchmark::DoNotOptimize(out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * n * n * n * n);
}

void bm_rearrange_omp(benchmark::State& state) {
    const index_t n = state.range(0);
    const auto a = random_buf(n * n * n * n, 3);
    std::vector<double> out(a.size());
    for (auto _ : state) {
        kk::par::rearrange(a.data(), n, n, n, n, out.data());
        benchmark::DoNotOptimize(out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * n * n * n * n);
}

void bm_matmul_nh_serial(benchmark::State& state) {
    const index_t n = state.range(0);
    const auto a = random_buf(n * n, 4);
    std::vector<double> out(static_cast<std::size_t>(n * n));
    for (auto _ : state) {
        kk::serial::matmul_nh(a.data(), n, n, a.data(), n, out.data());
        benchmark::DoNotOptimize(out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * n * n * n);
}

void bm_matmul_nh_omp(benchmark::State& state) {
    const index_t n = state.range(0);
    const auto a = random_buf(n * n, 4);
    std::vector<double> out(static_cast<std::size_t>(n * n));
    for (auto _ : state) {
        kk::par::matmul_nh(a.data(), n, n, a.data(), n, out.data());
        benchmark::DoNotOptimize(out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * n * n * n);
}

void bm_matvec_serial(benchmark::State& state) {
    const index_t n = state.range(0);
    const auto a = random_buf(n * n, 5);
    const auto x = random_buf(n, 6);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (auto _ : state) {
        kk::serial::matvec(a.data(), n, n, x.data(), y.data());
        benchmark::DoNotOptimize(y.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}

void bm_matvec_omp(benchmark::State& state) {
    const index_t n = state.range(0);
    const auto a = random_buf(n * n, 5);
    const auto x = random_buf(n, 6);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (auto _ : state) {
        kk::par::matvec(a.data(), n, n, x.data(), y.data());
        benchmark::DoNotOptimize(y.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}

void bm_frobenius_serial(benchmark::State& state) {
    const index_t n = state.range(0);
    const auto a = random_buf(n * n, 7);
    for (auto _ : state) {
        double v = kk::serial::frobenius_sq(a.data(), n, n);
        benchmark::DoNotOptimize(v);
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}

void bm_frobenius_omp(benchmark::State& state) {
    const index_t n = state.range(0);
    const auto a = random_buf(n * n, 7);
    for (auto _ : state) {
        double v = kk::par::frobenius_sq(a.data(), n, n);
        benchmark::DoNotOptimize(v);
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}

}  // namespace

BENCHMARK(bm_kron_serial)->Name("kron/serial")->Arg(16)->Arg(32);
BENCHMARK(bm_kron_omp)->Name("kron/omp")->Arg(16)->Arg(32);
BENCHMARK(bm_rearrange_serial)->Name("rearrange/serial")->Arg(16)->Arg(32);
BENCHMARK(bm_rearrange_omp)->Name("rearrange/omp")->Arg(16)->Arg(32);
BENCHMARK(bm_matmul_nh_serial)->Name("matmul_nh/serial")->Arg(128)->Arg(256);
BENCHMARK(bm_matmul_nh_omp)->Name("matmul_nh/omp")->Arg(128)->Arg(256);
BENCHMARK(bm_matvec_serial)->Name("matvec/serial")->Arg(1024)->Arg(2048);
BENCHMARK(bm_matvec_omp)->Name("matvec/omp")->Arg(1024)->Arg(2048);
BENCHMARK(bm_frobenius_serial)->Name("frobenius/serial")->Arg(1024)->Arg(2048);
BENCHMARK(bm_frobenius_omp)->Name("frobenius/omp")->Arg(1024)->Arg(2048);

BENCHMARK_MAIN();
