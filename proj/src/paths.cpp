#include <atomic>
#include <cmath>
#include <string>
#include <unordered_map>

#include "koebe/network.hpp"

namespace koebe {

namespace {

// Parallel edges between the same pair of vertices form one group; a step
// across the pair is split among them by conductance.
struct EdgeGroups {
    std::unordered_map<std::uint64_t, int> index;
    std::vector<std::vector<int>> members;
    std::vector<double> total;

    explicit EdgeGroups(const Network& net) {
        for (int e = 0; e < net.edge_count(); ++e) {
            auto key = pair_key(net.edge(e).u, net.edge(e).v);
            auto [it, fresh] = index.emplace(key, static_cast<int>(members.size()));
            if (fresh) {
                members.emplace_back();
                total.push_back(0.0);
            }
            members[it->second].push_back(e);
            total[it->second] += net.edge(e).c;
        }
    }

    static std::uint64_t pair_key(int u, int v) {
        int a = std::min(u, v), b = std::max(u, v);
        return static_cast<std::uint64_t>(a) << 32 | static_cast<std::uint32_t>(b);
    }

    // Group id and +1 when the step goes from the smaller to the larger id.
    std::pair<int, int> step(int x, int y) const {
        auto it = index.find(pair_key(x, y));
        if (it == index.end()) return {-1, 0};
        return {it->second, x < y ? 1 : -1};
    }

    Flow spread(const Network& net, const std::vector<double>& signed_count) const {
        Flow f;
        f.value.assign(net.edge_count(), 0.0);
        for (std::size_t g = 0; g < members.size(); ++g) {
            if (signed_count[g] == 0.0) continue;
            for (int e : members[g]) {
                const Edge& ed = net.edge(e);
                double orient = ed.u < ed.v ? 1.0 : -1.0;
                f.value[e] = orient * signed_count[g] * ed.c / total[g];
            }
        }
        return f;
    }
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

PathFlow path_distribution_flow(const Network& net, const std::vector<std::pair<Path, double>>& distribution) {
    EdgeGroups groups(net);
    std::vector<double> acc(groups.members.size(), 0.0);
    double mass = 0.0;
    for (const auto& [path, p] : distribution) {
        if (p < 0.0) fail(Errc::InvalidInput, "negative path probability");
        mass += p;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            auto [g, s] = groups.step(path[i], path[i + 1]);
            if (g < 0) fail(Errc::InvalidInput, "path uses a non-edge " + std::to_string(path[i]) + "-" + std::to_string(path[i + 1]));
            acc[g] += s * p;
        }
    }
    if (std::abs(mass - 1.0) > 1e-12) fail(Errc::InvalidInput, "path probabilities sum to " + std::to_string(mass));
    return {groups.spread(net, acc), static_cast<long>(distribution.size()), true};
}

PathFlow random_path_flow(const Network& net, const PathSampler& sampler, long samples, std::uint64_t seed,
                          std::size_t step_cap, Exec exec) {
    if (samples < 1) fail(Errc::InvalidInput, "sample budget must be positive");
    EdgeGroups groups(net);
    const std::size_t G = groups.members.size();
    std::vector<long long> counts(G, 0);
    std::atomic<int> failure{0};  // 0 ok, 1 too long, 2 bad step

    auto run = [&](long begin, long end, std::vector<long long>& local) {
        for (long i = begin; i < end && failure.load(std::memory_order_relaxed) == 0; ++i) {
            std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i))));
            Path path = sampler(rng);
            if (path.size() > step_cap + 1) {
                failure = 1;
                return;
            }
            for (std::size_t k = 0; k + 1 < path.size(); ++k) {
                auto [g, s] = groups.step(path[k], path[k + 1]);
                if (g < 0) {
                    failure = 2;
                    return;
                }
                local[g] += s;
            }
        }
    };

    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            std::vector<long long> local(G, 0);
#pragma omp for schedule(static)
            for (long i = 0; i < samples; ++i) run(i, i + 1, local);
#pragma omp critical
            for (std::size_t g = 0; g < G; ++g) counts[g] += local[g];
        }
    } else {
        run(0, samples, counts);
    }
    if (failure == 1) fail(Errc::PathNotTerminating, "a sampled path exceeded " + std::to_string(step_cap) + " steps");
    if (failure == 2) fail(Errc::InvalidInput, "sampler produced a step along a non-edge");

    std::vector<double> acc(G);
    for (std::size_t g = 0; g < G; ++g) acc[g] = static_cast<double>(counts[g]) / static_cast<double>(samples);
    return {groups.spread(net, acc), samples, false};
}

}  // namespace koebe
