// Serial reference kernels against their OpenMP versions on a weighted-disk
// sized problem. Run with OMP_NUM_THREADS set to compare scaling.

#include <benchmark/benchmark.h>

#include <cmath>
#include <map>

#include "plurilab/basis.hpp"
#include "plurilab/domains.hpp"
#include "plurilab/kernels.hpp"

using namespace plurilab;

namespace {

struct Problem {
    CandidateSet set;
    MultiIndexBasis basis;
    std::vector<double> scale, mass;
    kernels::Matrix A;
};

const Problem& problem(int n) {
    static std::map<int, Problem> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GeometrySpec g;
    g.kind = Geometry::disk;
    g.radial_resolution = 60;
    g.angular_resolution = 48;
    auto S = build_set(g);
    auto basis = enumerate_basis(n, 1);
    std::vector<double> scale(S.size());
    for (std::size_t k = 0; k < S.size(); ++k) scale[k] = std::exp(-n * std::norm(S.point(k)[0]));
    auto mass = S.masses();
    auto A = kernels::monomial_matrix_serial(basis, S, scale);
    return cache.emplace(n, Problem{std::move(S), std::move(basis), std::move(scale), std::move(mass), std::move(A)})
        .first->second;
}

template <bool Parallel>
void BM_monomial_matrix(benchmark::State& st) {
    const auto& p = problem(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        auto A = Parallel ? kernels::monomial_matrix(p.basis, p.set, p.scale)
                          : kernels::monomial_matrix_serial(p.basis, p.set, p.scale);
        benchmark::DoNotOptimize(A.data());
    }
}

template <bool Parallel>
void BM_gram(benchmark::State& st) {
    const auto& p = problem(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        auto G = Parallel ? kernels::gram(p.A, p.mass) : kernels::gram_serial(p.A, p.mass);
        benchmark::DoNotOptimize(G.data());
    }
}

template <bool Parallel>
void BM_bergman_solve(benchmark::State& st) {
    const auto& p = problem(static_cast<int>(st.range(0)));
    const kernels::Matrix G = kernels::gram_serial(p.A, p.mass);
    const kernels::Matrix L = G.llt().matrixL();
    for (auto _ : st) {
        auto B = Parallel ? kernels::solve_column_norms(L, p.A) : kernels::solve_column_norms_serial(L, p.A);
        benchmark::DoNotOptimize(B.data());
    }
}

template <bool Parallel>
void BM_deflate(benchmark::State& st) {
    const auto& p = problem(static_cast<int>(st.range(0)));
    kernels::Vector q = p.A.col(0).normalized();
    for (auto _ : st) {
        st.PauseTiming();
        kernels::Matrix A = p.A;
        st.ResumeTiming();
        if (Parallel) kernels::deflate(A, q);
        else kernels::deflate_serial(A, q);
        benchmark::DoNotOptimize(A.data());
    }
}

}  // namespace

BENCHMARK(BM_monomial_matrix<false>)->Arg(8)->Arg(16);
BENCHMARK(BM_monomial_matrix<true>)->Arg(8)->Arg(16);
BENCHMARK(BM_gram<false>)->Arg(8)->Arg(16);
BENCHMARK(BM_gram<true>)->Arg(8)->Arg(16);
BENCHMARK(BM_bergman_solve<false>)->Arg(8)->Arg(16);
BENCHMARK(BM_bergman_solve<true>)->Arg(8)->Arg(16);
BENCHMARK(BM_deflate<false>)->Arg(8)->Arg(16);
BENCHMARK(BM_deflate<true>)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
