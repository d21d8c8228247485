#include <benchmark/benchmark.h>

#include <random>

#include "koebe/linalg.hpp"
#include "koebe/magic.hpp"
#include "koebe/network.hpp"
#include "koebe/packing.hpp"

using namespace koebe;

namespace {

Exec mode(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

void BM_AngleSums(benchmark::State& state) {
    Triangulation tri = random_triangulation(static_cast<int>(state.range(0)), 1);
    AngleSystem sys(tri, boundary_angles(1, 1, 1));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    std::vector<double> r(sys.vertex_count()), out(r.size());
    for (double& x : r) x = u(rng);
    for (auto _ : state) {
        sys.angle_sums(r, out, mode(state));
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_AngleSumsScatter(benchmark::State& state) {
    Triangulation tri = random_triangulation(static_cast<int>(state.range(0)), 1);
    AngleSystem sys(tri, boundary_angles(1, 1, 1));
    std::vector<double> r(sys.vertex_count(), 1.0), out(r.size());
    for (auto _ : state) {
        sys.angle_sums_serial(r, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_SolveDense(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    std::vector<double> a(static_cast<std::size_t>(n) * n), b(n);
    for (double& x : a) x = g(rng);
    for (double& x : b) x = g(rng);
    for (auto _ : state) benchmark::DoNotOptimize(solve_dense(a, b, n, mode(state)));
}

void BM_MaxCover(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PointSet C(state.range(0));
    for (Point& p : C) p = {u(rng), u(rng)};
    for (auto _ : state) benchmark::DoNotOptimize(max_cover(C, 0.1, mode(state)));
}

void BM_PathFlow(benchmark::State& state) {
    LatticeBall ball = z3_ball_glued(static_cast<int>(state.range(0)));
    PathSampler sampler = z3_radial_sampler(ball);
    for (auto _ : state)
        benchmark::DoNotOptimize(random_path_flow(ball.ex.net, sampler, 2000, 7, 1'000'000, mode(state)));
}

}  // namespace

BENCHMARK(BM_AngleSums)->ArgsProduct({{200, 2000, 20000}, {0, 1}});
BENCHMARK(BM_AngleSumsScatter)->Arg(200)->Arg(2000)->Arg(20000);
BENCHMARK(BM_SolveDense)->ArgsProduct({{50, 200, 400}, {0, 1}});
BENCHMARK(BM_MaxCover)->ArgsProduct({{100, 400}, {0, 1}});
BENCHMARK(BM_PathFlow)->ArgsProduct({{4, 8}, {0, 1}});

BENCHMARK_MAIN();
