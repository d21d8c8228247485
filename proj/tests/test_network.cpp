#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "koebe/network.hpp"

using namespace koebe;

namespace {

Errc error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return Errc::InvalidInput;
}

double reff(const Network& net, int a, int z) { return effective_resistance(net, a, z).get(); }

// Same graph, fresh conductances: its unit current flow is a unit flow on the
// original network too.
Flow random_unit_flow(const Network& net, int a, int z, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> c(0.05, 20.0);
    std::vector<Edge> edges = net.edges();
    for (auto& e : edges) e.c = c(rng);
    Network other(net.vertex_count(), edges);
    Voltage v = solve_voltage(other, {a}, {z});
    Flow f = current_flow(other, v);
    double s = strength(other, f, {a});
    for (double& x : f.value) x /= s;
    return f;
}

Flow unit_current(const Network& net, int a, int z) {
    Voltage v = solve_voltage(net, {a}, {z});
    Flow f = current_flow(net, v);
    double s = strength(net, f, {a});
    for (double& x : f.value) x /= s;
    return f;
}

std::vector<Network> small_fixtures() {
    std::vector<Network> out{path_network(2), path_network(5), diamond_network(), star_network(4),
                             Network(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}}), spherically_symmetric_tree({2, 2}).net};
    for (int s = 0; s < 20; ++s) out.push_back(random_network(4 + s % 9, s % 7, 1000 + s));
    return out;
}

}  // namespace

TEST_CASE("network construction rejects bad conductances and loops") {
    CHECK(error_of([] { Network(2, {{0, 1, 0.0}}); }) == Errc::InvalidInput);
    CHECK(error_of([] { Network(2, {{0, 1, -1.0}}); }) == Errc::InvalidInput);
    CHECK(error_of([] { Network(2, {{0, 1, INFINITY}}); }) == Errc::InvalidInput);
    CHECK(error_of([] { Network(2, {{0, 0, 1.0}}); }) == Errc::InvalidInput);
    CHECK(error_of([] { Network(2, {{0, 2, 1.0}}); }) == Errc::InvalidInput);
    Network n(3, {{0, 1, 2.0}, {1, 2, 3.0}});
    CHECK(n.weight(1) == 5.0);
    CHECK(n.connected());
}

TEST_CASE("voltages on small networks") {
    auto p = path_network(2);
    CHECK(solve_voltage(p, {0}, {2}).h[1] == doctest::Approx(0.5).epsilon(1e-15));

    auto d = diamond_network();
    auto v = solve_voltage(d, {0}, {3});
    CHECK(std::abs(v.h[1] - 0.5) < 1e-14);
    CHECK(std::abs(v.h[2] - 0.5) < 1e-14);

    // Leaves 1,2 held at 0 and leaf 3 at 3: center is their average.
    auto s = star_network(3);
    auto w = solve_voltage(s, {1, 2}, {3}, 0.0, 3.0);
    CHECK(std::abs(w.h[0] - 1.0) < 1e-14);

    CHECK(error_of([&] { solve_voltage(d, {0}, {0}); }) == Errc::InvalidInput);
    CHECK(error_of([&] { solve_voltage(d, {}, {3}); }) == Errc::InvalidInput);
    Network split(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    CHECK(error_of([&] { solve_voltage(split, {0}, {3}); }) == Errc::Disconnected);
    CHECK(error_of([&] { effective_resistance(split, 0, 3); }) == Errc::Disconnected);
}

TEST_CASE("current flows") {
    auto p = path_network(5);
    Voltage v;
    v.h = {0, 1, 2, 3, 4, 5};
    v.A = {0};
    v.Z = {5};
    auto f = current_flow(p, v);
    for (double x : f.value) CHECK(x == 1.0);
    CHECK(strength(p, f, {0}) == 1.0);

    v.h.assign(6, 2.0);
    for (double x : current_flow(p, v).value) CHECK(x == 0.0);

    auto d = diamond_network();
    auto u = unit_current(d, 0, 3);
    CHECK(std::abs(u.value[0] - 0.5) < 1e-14);
    CHECK(std::abs(u.value[1] - 0.5) < 1e-14);
    CHECK(std::abs(u.value[2] - 0.5) < 1e-14);
    CHECK(std::abs(u.value[3] - 0.5) < 1e-14);
    CHECK(std::abs(u.value[4]) < 1e-14);
}

TEST_CASE("effective resistance table") {
    CHECK(std::abs(reff(path_network(5), 0, 5) - 5.0) < 1e-12);
    CHECK(std::abs(reff(diamond_network(), 0, 3) - 1.0) < 1e-12);
    auto t = spherically_symmetric_tree({3, 2, 1});
    CHECK(std::abs(effective_resistance(t.net, {0}, t.levels[3]).get() - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(reff(Network(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}}), 0, 1) - 2.0 / 3.0) < 1e-14);
}

TEST_CASE("reduction laws") {
    Network two(2, {{0, 1, 1.0}, {0, 1, 1.0}});
    auto par = reduce_parallel(two);
    REQUIRE(par.net.edge_count() == 1);
    CHECK(par.net.edge(0).c == 2.0);

    Network chain(3, {{0, 1, 1.0}, {1, 2, 0.5}});
    auto ser = reduce_series(chain, {0, 2});
    REQUIRE(ser.net.edge_count() == 1);
    CHECK(std::abs(1.0 / ser.net.edge(0).c - 3.0) < 1e-15);
    CHECK(ser.vertex_map[1] == -1);

    auto d = diamond_network();
    auto g = glue(d, {1, 2});
    CHECK(g.net.vertex_count() == 3);
    CHECK(g.net.edge_count() == 4);
    CHECK(std::abs(reff(g.net, g.vertex_map[0], g.vertex_map[3]) - 1.0) < 1e-12);

    // Series-parallel reduction of random trees-with-chains preserves Reff.
    for (int s = 0; s < 50; ++s) {
        auto net = random_network(9, 3, 77 + s);
        auto r = reduce_series(reduce_parallel(net).net, {0, 8});
        CHECK(std::abs(reff(net, 0, 8) - reff(r.net, r.vertex_map[0], r.vertex_map[8])) < 1e-10);
    }
}

TEST_CASE("voltage properties on random networks") {
    std::mt19937_64 rng(5);
    for (int s = 0; s < 200; ++s) {
        int n = 3 + s % 10;
        auto net = random_network(n, s % 8, 300 + s);
        int a = static_cast<int>(rng() % n), z = static_cast<int>(rng() % n);
        if (a == z) continue;
        double alpha = -1.0 + 0.01 * s, beta = 2.0;
        auto v = solve_voltage(net, {a}, {z}, alpha, beta);
        CHECK(harmonic_residual(net, v) < 1e-10);
        for (double h : v.h) {
            CHECK(h >= alpha - 1e-12);
            CHECK(h <= beta + 1e-12);
        }
        auto f = current_flow(net, v);
        CHECK(node_law_residual(net, f, {a, z}) < 1e-10);
        CHECK(cycle_law_residual(net, f) < 1e-9);
        CHECK(std::abs(reff(net, a, z) - reff(net, z, a)) < 1e-10);
        CHECK(reff(net, a, z) > 0.0);
    }
}

TEST_CASE("cycle law residual detects the strength-two flow") {
    auto d = diamond_network();
    Flow f{{1.0, 1.0, 0.0, 2.0, 1.0}};
    CHECK(node_law_residual(d, f, {0, 3}) == 0.0);
    CHECK(cycle_law_residual(d, f) > 0.5);
}

TEST_CASE("triangle inequality and Rayleigh monotonicity") {
    std::mt19937_64 rng(11);
    for (int s = 0; s < 500; ++s) {
        int n = 3 + static_cast<int>(rng() % 8);
        auto net = random_network(n, static_cast<int>(rng() % 10), rng());
        int x = static_cast<int>(rng() % n), y = static_cast<int>(rng() % n), z = static_cast<int>(rng() % n);
        if (x == y || y == z || x == z) continue;
        CHECK(reff(net, x, z) <= reff(net, x, y) + reff(net, y, z) + 1e-12);
    }
    for (int s = 0; s < 500; ++s) {
        int n = 2 + static_cast<int>(rng() % 9);
        auto net = random_network(n, static_cast<int>(rng() % 10), rng());
        int a = static_cast<int>(rng() % n), z = static_cast<int>((a + 1 + rng() % (n - 1)) % n);
        auto edges = net.edges();
        auto& e = edges[rng() % edges.size()];
        e.c /= 1.0 + 5.0 * std::uniform_real_distribution<double>(0, 1)(rng);
        Network raised(n, edges);
        CHECK(reff(raised, a, z) >= reff(net, a, z) - 1e-12);
    }
}

TEST_CASE("Thomson and Dirichlet principles") {
    std::mt19937_64 rng(3);
    int fixture = 0;
    for (const auto& net : small_fixtures()) {
        int a = 0, z = net.vertex_count() - 1;
        double r = reff(net, a, z);
        Flow current = unit_current(net, a, z);
        CHECK(std::abs(thomson_bound(net, {a}, {z}, current) - r) < 1e-10 * std::max(1.0, r));
        for (int k = 0; k < 100; ++k) {
            Flow f = random_unit_flow(net, a, z, rng);
            CHECK(flow_energy(net, f) >= r - 1e-9);
        }
        auto v = solve_voltage(net, {a}, {z});
        CHECK(std::abs(dirichlet_bound(net, {a}, {z}, v.h) - r) < 1e-9 * std::max(1.0, r));
        std::vector<double> h(net.vertex_count());
        std::uniform_real_distribution<double> u(0, 1);
        for (int k = 0; k < 50; ++k) {
            for (double& x : h) x = u(rng);
            h[a] = 0.0;
            h[z] = 1.0;
            CHECK(dirichlet_bound(net, {a}, {z}, h) <= r + 1e-9);
        }
        ++fixture;
    }
    CHECK(fixture == 26);

    auto d = diamond_network();
    Flow halved{{0.5, 0.5, 0.0, 1.0, 0.5}};
    CHECK(std::abs(thomson_bound(d, {0}, {3}, halved) - 1.75) < 1e-15);
    Flow doubled{{1.0, 1.0, 0.0, 2.0, 1.0}};
    CHECK(error_of([&] { thomson_bound(d, {0}, {3}, doubled); }) == Errc::StrengthNotOne);

    auto p = path_network(5);
    std::vector<double> step{0, 0, 0, 1, 1, 1};
    CHECK(function_energy(p, step) == 1.0);
    CHECK(dirichlet_bound(p, {0}, {5}, step) == 1.0);
    CHECK(1.0 / function_energy(p, step) <= 5.0);
}

TEST_CASE("Nash-Williams bound") {
    auto p = path_network(5);
    std::vector<std::vector<int>> per_edge;
    for (int e = 0; e < 5; ++e) per_edge.push_back({e});
    CHECK(std::abs(nash_williams_bound(p, {0}, {5}, per_edge) - 5.0) < 1e-12);

    auto d = diamond_network();
    CHECK(nash_williams_bound(d, {0}, {3}, {{0, 1}}) == 0.5);
    CHECK(error_of([&] { nash_williams_bound(d, {0}, {3}, {{0}}); }) == Errc::NotACutset);
    CHECK(error_of([&] { nash_williams_bound(d, {0}, {3}, {{0, 1}, {1, 4, 3}}); }) == Errc::OverlappingCutsets);

    for (int N : {3, 6, 10}) {
        auto ex = grid_box_glued(N);
        const int side = 2 * N + 1;
        auto shell = [&](int v) {
            if (v == ex.Z.front()) return N + 1;
            int x = v % side - N, y = v / side - N;
            return std::max(std::abs(x), std::abs(y));
        };
        std::vector<std::vector<int>> cuts(N + 1);
        for (int e = 0; e < ex.net.edge_count(); ++e) {
            int a = shell(ex.net.edge(e).u), b = shell(ex.net.edge(e).v);
            if (a != b) cuts[std::min(a, b)].push_back(e);
        }
        double expected = 0.0;
        for (int n = 0; n <= N; ++n) {
            CHECK(cuts[n].size() == static_cast<std::size_t>(4 * (2 * n + 1)));
            expected += 1.0 / (4.0 * (2 * n + 1));
        }
        double bound = nash_williams_bound(ex.net, ex.A, ex.Z, cuts);
        CHECK(std::abs(bound - expected) < 1e-12);
        CHECK(bound <= effective_resistance(ex.net, ex.A, ex.Z).get());
    }
}

TEST_CASE("hitting times and the commute-time identity") {
    auto p = path_network(2);
    auto h = hitting_times(p, {2});
    CHECK(std::abs(h[0] - 4.0) < 1e-12);
    CHECK(h[2] == 0.0);
    CHECK(std::abs(commute_time(p, 0, 2) - 8.0) < 1e-12);

    Network tri(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}});
    CHECK(std::abs(hitting_times(tri, {1})[0] - 2.0) < 1e-12);
    CHECK(std::abs(commute_time(tri, 0, 1) - 4.0) < 1e-12);

    for (const auto& net : small_fixtures()) {
        int a = 0, z = net.vertex_count() - 1;
        double lhs = commute_time(net, a, z);
        double rhs = 2.0 * reff(net, a, z) * net.total_conductance();
        CHECK(std::abs(lhs - rhs) <= 1e-9 * rhs);
    }
}

TEST_CASE("resistance matches the escape probability") {
    for (const auto& net : small_fixtures()) {
        for (int a = 0; a < net.vertex_count(); ++a) {
            int z = (a + 1) % net.vertex_count();
            double esc = escape_probability(net, a, {z});
            CHECK(std::abs(reff(net, a, z) - 1.0 / (net.weight(a) * esc)) < 1e-9);
        }
    }
}

TEST_CASE("path flows") {
    auto p = path_network(3);
    auto f = path_distribution_flow(p, {{{0, 1, 2, 3}, 1.0}});
    for (double x : f.flow.value) CHECK(x == 1.0);
    CHECK(f.exact);

    auto d = diamond_network();
    auto g = path_distribution_flow(d, {{{0, 1, 3}, 0.5}, {{0, 2, 3}, 0.5}});
    CHECK(g.flow.value[0] == 0.5);
    CHECK(g.flow.value[1] == 0.5);
    CHECK(g.flow.value[2] == 0.5);
    CHECK(g.flow.value[3] == 0.5);
    CHECK(g.flow.value[4] == 0.0);
    CHECK(error_of([&] { path_distribution_flow(d, {{{0, 3}, 1.0}}); }) == Errc::InvalidInput);

    // Parallel edges split a traversal by conductance; backtracking cancels.
    Network par(3, {{0, 1, 1.0}, {1, 0, 3.0}, {1, 2, 1.0}});
    auto q = path_distribution_flow(par, {{{0, 1, 0, 1, 2}, 1.0}});
    CHECK(std::abs(q.flow.value[0] - 0.25) < 1e-15);
    CHECK(std::abs(q.flow.value[1] + 0.75) < 1e-15);
    CHECK(q.flow.value[2] == 1.0);

    PathSampler coin = [](std::mt19937_64& rng) { return rng() % 2 ? Path{0, 1, 3} : Path{0, 2, 3}; };
    auto mc = random_path_flow(d, coin, 20000, 9);
    auto mc_serial = random_path_flow(d, coin, 20000, 9, 1'000'000, Exec::serial);
    CHECK(mc.flow.value == mc_serial.flow.value);
    CHECK(mc.samples == 20000);
    CHECK(std::abs(mc.flow.value[0] - 0.5) < 0.03);
    CHECK(std::abs(strength(d, mc.flow, {0}) - 1.0) < 1e-12);

    PathSampler forever = [](std::mt19937_64&) { return Path(50, 0); };
    CHECK(error_of([&] { random_path_flow(d, forever, 10, 1, 10); }) == Errc::PathNotTerminating);
}

TEST_CASE("boundary resistance along exhaustions") {
    auto single = boundary_resistance([](int) { return Exhausted{path_network(1), {0}, {1}}; }, {1, 2, 3});
    for (auto& [i, r] : single) {
        CHECK(r.get() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(r.kind == ResistanceKind::to_boundary);
    }

    std::vector<int> ns{8, 12, 16, 24, 32, 48, 64};
    auto seq = boundary_resistance(grid_box_glued, ns);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i > 0) CHECK(seq[i].second.get() >= seq[i - 1].second.get());
        double x = std::log(ns[i]), y = seq[i].second.get();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double k = static_cast<double>(ns.size());
    double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    CHECK(std::abs(slope - 1.0 / (2.0 * std::numbers::pi)) < 0.2 / (2.0 * std::numbers::pi));

    double expected = 0.0;
    for (int depth = 1; depth <= 7; ++depth) {
        expected += std::pow(3.0, -depth);
        auto t = spherically_symmetric_tree(std::vector<int>(depth, 3));
        CHECK(std::abs(effective_resistance(t.net, {0}, t.levels.back()).get() - expected) < 1e-12);
    }
    CHECK(expected < 0.5);
}

TEST_CASE("radial random paths in Z3 keep bounded energy") {
    std::vector<double> energy;
    for (int R : {3, 5, 7, 9}) {
        auto ball = z3_ball_glued(R);
        auto pf = random_path_flow(ball.ex.net, z3_radial_sampler(ball), 200000, 2024);
        CHECK(std::abs(strength(ball.ex.net, pf.flow, ball.ex.A) - 1.0) < 1e-12);
        CHECK(node_law_residual(ball.ex.net, pf.flow, {ball.ex.A.front(), ball.ex.Z.front()}) < 1e-12);
        double e = flow_energy(ball.ex.net, pf.flow);
        double r = effective_resistance(ball.ex.net, ball.ex.A, ball.ex.Z).get();
        CHECK(e >= r);
        MESSAGE("R=" << R << " energy=" << e << " Reff=" << r);
        energy.push_back(e);
    }
    // Increments shrink: the shell contributions are summable.
    for (std::size_t i = 2; i < energy.size(); ++i) CHECK(energy[i] - energy[i - 1] < energy[i - 1] - energy[i - 2]);
    CHECK(energy.back() < 1.0);
}
