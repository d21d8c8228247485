#include "koebe/packing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace koebe {

namespace {

// Half-angle form of the cosine rule; stays accurate for thin triangles.
inline double corner_angle(double rc, double rl, double rr) {
    return 2.0 * std::atan(std::sqrt(rl * rr / (rc * (rc + rl + rr))));
}

}  // namespace

double face_angle(double rc, double rl, double rr) {
    if (!(rc > 0.0) || !(rl > 0.0) || !(rr > 0.0)) fail(Errc::NonPositiveRadius, "radii must be positive");
    return corner_angle(rc, rl, rr);
}

std::array<double, 3> boundary_angles(double rho1, double rho2, double rho3) {
    double t1 = face_angle(rho1, rho2, rho3);
    double t2 = face_angle(rho2, rho3, rho1);
    return {t1, t2, std::numbers::pi - t1 - t2};
}

AngleSystem::AngleSystem(const Triangulation& tri, std::array<double, 3> theta) : n_(tri.vertex_count()) {
    if (tri.map.multigraph()) fail(Errc::NotATriangulation, "circle packing needs a simple triangulation");
    outer_ = tri.outer_vertices();
    tris_ = tri.inner_triangles();
    off_.assign(n_ + 1, 0);
    for (const auto& t : tris_)
        for (int v : t) ++off_[v + 1];
    for (int v = 0; v < n_; ++v) off_[v + 1] += off_[v];
    corner_.resize(off_[n_]);
    std::vector<int> fill(off_.begin(), off_.end() - 1);
    for (const auto& [a, b, c] : tris_) {
        corner_[fill[a]++] = {b, c};
        corner_[fill[b]++] = {c, a};
        corner_[fill[c]++] = {a, b};
    }
    target_.assign(n_, 2.0 * std::numbers::pi);
    for (int i = 0; i < 3; ++i) target_[outer_[i]] = theta[i];
}

void AngleSystem::angle_sums(std::span<const double> r, std::span<double> out, Exec exec) const {
    auto gather = [&](int v) {
        double s = 0.0;
        for (const auto& c : corners(v)) s += face_angle(r[v], r[c.left], r[c.right]);
        out[v] = s;
    };
    if (exec == Exec::parallel && n_ > 256) {
#pragma omp parallel for schedule(static)
        for (int v = 0; v < n_; ++v) gather(v);
    } else {
        for (int v = 0; v < n_; ++v) gather(v);
    }
}

void AngleSystem::angle_sums_serial(std::span<const double> r, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto& [a, b, c] : tris_) {
        out[a] += face_angle(r[a], r[b], r[c]);
        out[b] += face_angle(r[b], r[c], r[a]);
        out[c] += face_angle(r[c], r[a], r[b]);
    }
}

void AngleSystem::deficits(std::span<const double> r, std::span<double> out, Exec exec) const {
    angle_sums(r, out, exec);
    for (int v = 0; v < n_; ++v) out[v] -= target_[v];
}

std::vector<double> angle_deficits(const Triangulation& tri, std::span<const double> r, std::array<double, 3> theta,
                                   Exec exec) {
    AngleSystem sys(tri, theta);
    if (static_cast<int>(r.size()) != sys.vertex_count()) fail(Errc::InvalidInput, "radius vector has the wrong length");
    std::vector<double> d(sys.vertex_count());
    sys.deficits(r, d, exec);
    return d;
}

GapSolver::GapSolver(const AngleSystem& sys, std::vector<double> r, Exec exec)
    : sys_(&sys), exec_(exec), r_(std::move(r)) {
    const int n = sys.vertex_count();
    if (static_cast<int>(r_.size()) != n) fail(Errc::InvalidInput, "radius vector has the wrong length");
    double sum = 0.0;
    for (double x : r_) {
        if (!(x > 0.0)) fail(Errc::NonPositiveRadius, "initial radii must be positive");
        sum += x;
    }
    for (double& x : r_) x /= sum;
    d_.resize(n);
    angle_.resize(3 * sys.triangles().size());
    refresh();
    order_.resize(n);
    for (int v = 0; v < n; ++v) order_[v] = {0.0, v};
    in_s_.assign(n, 0);
    mark_.assign(n, 0);
    trial_.resize(n);
}

void GapSolver::refresh() {
    sys_->deficits(r_, d_, exec_);
    const auto& tris = sys_->triangles();
    for (std::size_t f = 0; f < tris.size(); ++f) {
        const auto& [i, j, k] = tris[f];
        angle_[3 * f] = corner_angle(r_[i], r_[j], r_[k]);
        angle_[3 * f + 1] = corner_angle(r_[j], r_[k], r_[i]);
        angle_[3 * f + 2] = corner_angle(r_[k], r_[i], r_[j]);
    }
}

double GapSolver::energy() const {
    double e = 0.0;
    for (double x : d_) e += x * x;
    return e;
}

double GapSolver::gap_after(double lambda) {
    const auto& tris = sys_->triangles();
    for (int v : touched_) trial_[v] = d_[v];
    for (std::size_t q = 0; q < mixed_.size(); ++q) {
        const auto& [i, j, k] = tris[mixed_[q]];
        double ri = in_s_[i] ? r_[i] : lambda * r_[i];
        double rj = in_s_[j] ? r_[j] : lambda * r_[j];
        double rk = in_s_[k] ? r_[k] : lambda * r_[k];
        double* a = &face_trial_[3 * q];
        a[0] = corner_angle(ri, rj, rk);
        a[1] = corner_angle(rj, rk, ri);
        a[2] = corner_angle(rk, ri, rj);
        trial_[i] += a[0] - base_[3 * q];
        trial_[j] += a[1] - base_[3 * q + 1];
        trial_[k] += a[2] - base_[3 * q + 2];
    }
    double lo = min_s_, hi = max_c_;
    for (int v : touched_) {
        if (in_s_[v])
            lo = std::min(lo, trial_[v]);
        else
            hi = std::max(hi, trial_[v]);
    }
    return lo - hi;
}

GapSolver::Step GapSolver::step() {
    const int n = sys_->vertex_count();
    const auto& tris = sys_->triangles();
    // The previous order is nearly sorted: only touched deficits moved.
    for (auto& [key, v] : order_) key = d_[v];
    auto before = [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); };
    for (int i = 1; i < n; ++i) {
        auto x = order_[i];
        int j = i;
        for (; j > 0 && before(x, order_[j - 1]); --j) order_[j] = order_[j - 1];
        order_[j] = x;
    }
    double best = -1.0;
    int cut = 0;
    for (int i = 0; i + 1 < n; ++i) {
        double g = order_[i].first - order_[i + 1].first;
        if (g >= best) {
            best = g;
            cut = i;
        }
    }
    std::fill(in_s_.begin(), in_s_.end(), 0);
    for (int i = 0; i <= cut; ++i) in_s_[order_[i].second] = 1;

    Step out;
    out.gap = best;
    if (!(best > 0.0)) return out;

    // Only faces mixing S and its complement change their angles when the
    // complement is scaled.
    mixed_.clear();
    touched_.clear();
    for (int f = 0; f < static_cast<int>(tris.size()); ++f) {
        const auto& t = tris[f];
        int c = in_s_[t[0]] + in_s_[t[1]] + in_s_[t[2]];
        if (c == 1 || c == 2) {
            mixed_.push_back(f);
            for (int v : t)
                if (!mark_[v]) {
                    mark_[v] = 1;
                    touched_.push_back(v);
                }
        }
    }
    min_s_ = std::numeric_limits<double>::infinity();
    max_c_ = -std::numeric_limits<double>::infinity();
    for (int v = 0; v < n; ++v) {
        if (mark_[v]) continue;
        if (in_s_[v])
            min_s_ = std::min(min_s_, d_[v]);
        else
            max_c_ = std::max(max_c_, d_[v]);
    }
    const std::size_t m_faces = 3 * mixed_.size();
    base_.resize(m_faces);
    face_trial_.resize(m_faces);
    face_lo_.resize(m_faces);
    face_hi_.resize(m_faces);
    for (std::size_t q = 0; q < mixed_.size(); ++q)
        for (int c = 0; c < 3; ++c) base_[3 * q + c] = angle_[3 * mixed_[q] + c];

    // Bracket the root from below, then Illinois false position.
    // The deficits at both ends of the bracket are kept so the accepted end
    // needs no further evaluation.
    const std::size_t m_touched = touched_.size();
    trial_lo_.resize(m_touched);
    trial_hi_.resize(m_touched);
    auto keep = [&](std::vector<double>& into, std::vector<double>& faces) {
        for (std::size_t q = 0; q < m_touched; ++q) into[q] = trial_[touched_[q]];
        faces = face_trial_;
    };
    for (std::size_t q = 0; q < m_touched; ++q) trial_hi_[q] = d_[touched_[q]];
    face_hi_ = base_;
    // Consecutive steps tend to pick similar λ, so a bracket around the last
    // one is tried before halving from 1/2.
    double lo = std::max(0.5, 1.0 - 2.0 * (1.0 - last_lambda_)), glo = gap_after(lo);
    if (glo > 0.0 && lo > 0.5) {
        lo = 0.5;
        glo = gap_after(lo);
    }
    for (int k = 0; glo > 0.0 && k < 1000; ++k) {
        lo *= 0.5;
        glo = gap_after(lo);
    }
    keep(trial_lo_, face_lo_);
    double hi = 1.0, ghi = best;
    int side = 0;
    for (int it = 0; it < 80; ++it) {
        double m = (lo * ghi - hi * glo) / (ghi - glo);
        if (!(m > lo && m < hi)) m = 0.5 * (lo + hi);
        double gm = gap_after(m);
        if (gm > 0.0) {
            hi = m;
            ghi = gm;
            keep(trial_hi_, face_hi_);
            if (side == 1) glo *= 0.5;
            side = 1;
        } else {
            lo = m;
            glo = gm;
            keep(trial_lo_, face_lo_);
            if (side == -1) ghi *= 0.5;
            side = -1;
        }
        if (std::abs(gm) < 1e-15 * std::max(1.0, best) || hi - lo < 1e-16) break;
    }
    const bool take_lo = std::abs(glo) < std::abs(ghi);
    double lambda = take_lo ? lo : hi;
    const auto& accepted = take_lo ? trial_lo_ : trial_hi_;
    for (std::size_t q = 0; q < m_touched; ++q) {
        d_[touched_[q]] = accepted[q];
        mark_[touched_[q]] = 0;
    }
    const auto& accepted_faces = take_lo ? face_lo_ : face_hi_;
    for (std::size_t q = 0; q < mixed_.size(); ++q)
        for (int c = 0; c < 3; ++c) angle_[3 * mixed_[q] + c] = accepted_faces[3 * q + c];

    double sum = 0.0;
    for (int v = 0; v < n; ++v) {
        if (!in_s_[v]) r_[v] *= lambda;
        sum += r_[v];
    }
    for (double& x : r_) x /= sum;
    // Incremental updates drift by a few ulps per step; resynchronize.
    if (++steps_ % kRefresh == 0) refresh();
    out.lambda = lambda;
    last_lambda_ = lambda;
    return out;
}

std::vector<double> warm_start(const AngleSystem& sys, std::vector<double> r, double energy_goal, long max_sweeps,
                               long* sweeps) {
    const int n = sys.vertex_count();
    const auto& target = sys.targets();
    std::vector<double> d(n);
    long s = 0;
    for (; s < max_sweeps; ++s) {
        sys.deficits(r, d, Exec::serial);
        double e = 0.0;
        for (double x : d) e += x * x;
        if (e <= energy_goal) break;
        for (int v = 0; v < n; ++v) {
            auto cs = sys.corners(v);
            const double k = static_cast<double>(cs.size());
            double theta = 0.0;
            for (const auto& c : cs) theta += face_angle(r[v], r[c.left], r[c.right]);
            double beta = std::sin(theta / (2.0 * k));
            double delta = std::sin(target[v] / (2.0 * k));
            double neighbor = beta * r[v] / (1.0 - beta);
            r[v] = (1.0 - delta) / delta * neighbor;
        }
        double sum = std::accumulate(r.begin(), r.end(), 0.0);
        for (double& x : r) x /= sum;
    }
    if (sweeps) *sweeps = s;
    return r;
}

RadiiResult solve_radii(const Triangulation& tri, std::array<double, 3> rho, const SolverOptions& opts) {
    for (double x : rho)
        if (!(x > 0.0) || !std::isfinite(x)) fail(Errc::NonPositiveRadius, "boundary radii must be positive");
    if (!(opts.tol > 0.0)) fail(Errc::InvalidInput, "tolerance must be positive");
    const int n = tri.vertex_count();
    if (n < 3) fail(Errc::TooSmall, "a triangulation needs at least three vertices");
    if (tri.map.multigraph()) fail(Errc::NotATriangulation, "circle packing needs a simple triangulation");
    auto outer = tri.outer_vertices();
    RadiiResult res;
    if (n == 3) {
        res.radii.assign(3, 0.0);
        for (int i = 0; i < 3; ++i) res.radii[outer[i]] = rho[i];
        return res;
    }

    AngleSystem sys(tri, boundary_angles(rho[0], rho[1], rho[2]));
    std::vector<double> r0(n, 1.0 / n);
    if (opts.init == RadiusInit::random) {
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<double> u(0.05, 1.0);
        for (double& x : r0) x = u(rng);
    } else if (opts.init == RadiusInit::warm) {
        double goal = opts.warm_goal > 0.0 ? opts.warm_goal : opts.tol;
        r0 = warm_start(sys, std::move(r0), goal, opts.warm_max_sweeps, &res.report.warm_sweeps);
    }

    GapSolver solver(sys, std::move(r0), opts.exec);
    SolverReport& rep = res.report;
    double e = solver.energy();
    rep.initial_energy = e;
    if (opts.record_trace) rep.energy_trace.push_back(e);
    const double n3 = static_cast<double>(n) * n * n;
    const double factor = 1.0 - 1.0 / (2.0 * n3);
    auto finish = [&] {
        rep.energy = e;
        res.radii = solver.radii();
        double num = 0.0, den = 0.0;
        for (int i = 0; i < 3; ++i) {
            num += rho[i] * res.radii[outer[i]];
            den += res.radii[outer[i]] * res.radii[outer[i]];
        }
        rep.scale = num / den;
        for (double& x : res.radii) x *= rep.scale;
    };
    while (e > opts.tol) {
        if (rep.iterations >= opts.max_iter) {
            finish();
            throw SolverError(Errc::MaxIterExceeded,
                              "energy " + std::to_string(e) + " after " + std::to_string(rep.iterations) + " iterations", res);
        }
        auto st = solver.step();
        double next = solver.energy();
        ++rep.iterations;
        if (next > e * factor) ++rep.bound_violations;
        if (next >= e) ++rep.nondecreasing_steps;
        if (e > 0.0) rep.worst_ratio = std::max(rep.worst_ratio, next / e);
        if (opts.record_trace) {
            rep.energy_trace.push_back(next);
            rep.lambdas.push_back(st.lambda);
        }
        e = next;
        if (opts.observer) opts.observer(rep.iterations, e);
        if (!(st.gap > 0.0)) break;
        if (e <= opts.tol) {
            solver.refresh();
            e = solver.energy();
        }
    }
    finish();
    return res;
}

}  // namespace koebe
