#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ivelvp/ekeland.hpp"
#include "ivelvp/expr.hpp"
#include "ivelvp/interval.hpp"
#include "ivelvp/ivode.hpp"

using namespace ivelvp;

namespace {

void BM_GhDiff(benchmark::State& state) {
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> u(-5, 5);
    std::vector<Interval> xs;
    for (int i = 0; i < 1024; ++i) {
        const double a = u(rng), b = u(rng);
        xs.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gh_diff(xs[i & 1023], xs[(i + 1) & 1023]));
        ++i;
    }
}
BENCHMARK(BM_GhDiff);

void BM_ExprEval(benchmark::State& state) {
    const Expr e = Expr::parse("ite(x < 0, exp(x) + 1, 1/(x^2+1) + sin(x))", {"x"});
    double x = -1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(e.eval(std::span<const double>(&x, 1)));
        x += 1e-6;
    }
}
BENCHMARK(BM_ExprEval);

void BM_GridDescent(benchmark::State& state) {
    const auto grid = static_cast<std::size_t>(state.range(0));
    const auto f = IntervalFn::from_exprs(Expr::parse("1/(x^2+1)", {"x"}), Expr::parse("1/(x^2+1)+1", {"x"}),
                                          Domain::box({-100}, {100}, grid));
    const Point x0{0};
    for (auto _ : state) benchmark::DoNotOptimize(ekeland_minimize(f, 0.01, x0));
}
BENCHMARK(BM_GridDescent)->Arg(2001)->Arg(20001);

void BM_SolveIvp(benchmark::State& state) {
    IntervalIVP p;
    p.lower = [](double s, double v, double, std::span<const double>) { return std::cos(s) * v; };
    p.upper = [](double s, double, double v, std::span<const double>) { return std::cos(s) * v + s; };
    p.x0 = Interval(1, 2);
    p.horizon = 2;
    p.mode = DiffMode::I;
    p.step = 1.0 / static_cast<double>(state.range(0));
    const auto u = PiecewiseConstantControl::constant({}, 2);
    for (auto _ : state) benchmark::DoNotOptimize(solve_ivp(p, u));
}
BENCHMARK(BM_SolveIvp)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
