#include <benchmark/benchmark.h>

#include "scat/invariants.hpp"
#include "scat/local_scattering.hpp"

using namespace scat;

namespace {

RatFuncQ dense_ratfunc(int terms, int sign) {
    HalfLaurent num, den = HalfLaurent::one();
    for (int i = 0; i < terms; ++i)
        num += HalfLaurent::monomial(i - terms / 2, rat(sign * (i + 1), 3));
    for (int i = 1; i <= terms / 2; ++i)
        den = den * (HalfLaurent::monomial(i, Rat(1)) -
                     HalfLaurent::monomial(-i, Rat(1)));
    return RatFuncQ(num, den);
}

void bm_ratfunc_mul(benchmark::State& state) {
    RatFuncQ a = dense_ratfunc(static_cast<int>(state.range(0)), 1);
    RatFuncQ b = dense_ratfunc(static_cast<int>(state.range(0)) + 1, -1);
    for (auto _ : state) {
        RatFuncQ c = a * b + b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(bm_ratfunc_mul)->Arg(8)->Arg(16)->Arg(32);

void bm_pentagon(benchmark::State& state) {
    long cap = state.range(0);
    for (auto _ : state) {
        TruncationContext ctx(SkewForm{1}, Rat(1), Rat(1), Rat(cap));
        ctx.generate_support({{1, 0}, {0, 1}});
        std::vector<LocalRay<RatFuncQ>> in;
        for (long l = 1; l <= cap; ++l) {
            in.push_back({{l, 0}, initial_coefficient(l)});
            in.push_back({{0, l}, initial_coefficient(l)});
        }
        auto out = complete_vertex(in, {}, ctx);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(bm_pentagon)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void bm_poincare_conic(benchmark::State& state) {
    for (auto _ : state) {
        auto b = poincare({0, 2, 1});
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(bm_poincare_conic)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
