#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "koebe/io.hpp"
#include "koebe/magic.hpp"
#include "koebe/network.hpp"
#include "koebe/packing.hpp"
#include "koebe/startree.hpp"
#include "koebe/svg.hpp"
#include "koebe/ust.hpp"

using namespace koebe;

namespace {

enum class LogLevel { quiet, info, trace };

LogLevel log_level() {
    const char* v = std::getenv("KOEBE_LOG");
    if (!v) return LogLevel::info;
    std::string s(v);
    if (s == "quiet") return LogLevel::quiet;
    if (s == "trace") return LogLevel::trace;
    return LogLevel::info;
}

void log_line(LogLevel at, const Json& j) {
    if (log_level() >= at) std::cerr << j.dump() << '\n';
}

bool validation_error(Errc code) {
    switch (code) {
        case Errc::MaxIterExceeded:
        case Errc::SingularSystem:
        case Errc::NonPositiveRadius:
        case Errc::InconsistentAngles:
        case Errc::PathNotTerminating:
        case Errc::TooLarge:
            return false;
        default:
            return true;
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::InvalidInput, "cannot write " + path);
    out << text;
}

std::string fmt12(double x) {
    std::ostringstream s;
    s << std::setprecision(12) << std::showpoint << x;
    return s.str();
}

std::string fmt17(double x) {
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

BallKind parse_kind(const std::string& s) {
    if (s == "triangular6") return BallKind::triangular6;
    if (s == "hyperbolic7") return BallKind::hyperbolic7;
    if (s == "grid") return BallKind::grid;
    fail(Errc::InvalidInput, "unknown ball kind " + s);
}

// ---- pack -------------------------------------------------------------------

struct PackArgs {
    std::string map_path, out;
    std::vector<double> rho{1.0, 1.0, 1.0};
    bool disc = false;
    bool auto_triangulate = false;
    double tol = -1.0;
    long max_iter = 20'000'000;
    std::string init;
};

int cmd_pack(const PackArgs& a, std::uint64_t seed) {
    PlanarMap map = map_from_json(read_json(a.map_path));
    const int n = map.vertex_count();
    SolverOptions solver = a.disc ? disc_solver() : SolverOptions{};
    if (a.tol > 0) solver.tol = a.tol;
    solver.max_iter = a.max_iter;
    solver.seed = seed;
    solver.record_trace = false;
    if (a.init == "uniform") solver.init = RadiusInit::uniform;
    if (a.init == "random") solver.init = RadiusInit::random;
    if (a.init == "warm") solver.init = RadiusInit::warm;
    const LogLevel level = log_level();
    solver.observer = [level](long it, double e) {
        if (level == LogLevel::trace || (level == LogLevel::info && it % 1000 == 0))
            std::cerr << Json{{"iteration", it}, {"energy", e}}.dump() << '\n';
    };

    Packing packing;
    Json report;
    if (a.disc) {
        PlanarMap work = a.auto_triangulate ? triangulate_star(map, map.outer_face()).map : map;
        DiscOptions opts;
        opts.solver = solver;
        auto disc = pack_in_disc(work, opts);
        packing = disc.packing;
        report = {{"iterations", disc.report.iterations},
                  {"energy", disc.report.energy},
                  {"boundary_residual", disc.boundary_residual},
                  {"escape", disc.escape}};
    } else {
        PlanarMap work = a.auto_triangulate ? triangulate_star(map).map : map;
        Triangulation tri = as_triangulation(work, work.outer_face() >= 0 ? work.outer_face() : 0);
        auto result = solve_radii(tri, {a.rho[0], a.rho[1], a.rho[2]}, solver);
        packing = layout(tri, result.radii);
        auto check = verify_packing(packing, tri.map, 1e-6 * *std::max_element(packing.radius.begin(), packing.radius.end()));
        report = {{"iterations", result.report.iterations},
                  {"energy", result.report.energy},
                  {"scale", result.report.scale},
                  {"tangency", check.tangency},
                  {"verified", check.pass}};
    }
    packing.center.resize(n);
    packing.radius.resize(n);
    Json out = packing_to_json(map, packing);
    write_text(a.out, out.dump(2) + "\n");
    log_line(LogLevel::info, Json{{"report", report}});
    return 0;
}

// ---- render -----------------------------------------------------------------

int cmd_render(const std::string& in, const std::string& out, bool labels, const std::string& flow_path) {
    auto file = packing_from_json(read_json(in), std::filesystem::path(in).parent_path());
    SvgOptions opts;
    opts.labels = labels;
    Flow flow;
    if (!flow_path.empty()) {
        flow = flow_from_json(read_json(flow_path));
        opts.flow = &flow;
    }
    write_text(out, render_svg(file.packing, file.map, opts));
    return 0;
}

// ---- reff -------------------------------------------------------------------

int cmd_reff(const std::string& path, const std::vector<int>& A, const std::vector<int>& Z, const std::string& bound,
             const std::string& aux) {
    Network net = network_from_json(read_json(path));
    double value = 0.0;
    if (bound.empty()) {
        value = effective_resistance(net, A, Z).get();
    } else {
        if (aux.empty()) fail(Errc::InvalidInput, "--bound needs --aux");
        Json j = read_json(aux);
        if (bound == "thomson") {
            value = thomson_bound(net, A, Z, flow_from_json(j));
        } else if (bound == "dirichlet") {
            auto h = j.is_object() ? j.at("h") : j;
            value = dirichlet_bound(net, A, Z, h.get<std::vector<double>>());
        } else {
            auto cuts = j.is_object() ? j.at("cutsets") : j;
            value = nash_williams_bound(net, A, Z, cuts.get<std::vector<std::vector<int>>>());
        }
    }
    std::cout << fmt12(value) << '\n';
    return 0;
}

// ---- ust --------------------------------------------------------------------

int cmd_ust(const std::string& path, const std::vector<int>& require, const std::vector<int>& forbid, bool list,
            const std::string& usf, const std::vector<int>& depths) {
    if (!usf.empty()) {
        std::function<ExhaustionStage(int)> stage;
        if (usf == "z2") stage = z2_edge_stage;
        else if (usf == "tree") stage = [](int d) { return regular_tree_stage(d); };
        else stage = half_line_stage;
        if (depths.empty()) fail(Errc::InvalidInput, "--depths is empty");
        std::string csv = "depth,free,wired\n";
        for (const auto& r : usf_edge_marginals(stage, depths))
            csv += std::to_string(r.depth) + "," + fmt17(r.free) + "," + fmt17(r.wired) + "\n";
        std::cout << csv;
        return 0;
    }
    if (path.empty()) fail(Errc::InvalidInput, "a network file is required");
    Network net = network_from_json(read_json(path));
    auto dist = enumerate_spanning_trees(net);
    Json out;
    out["trees"] = dist.count();
    out["matrix_tree"] = matrix_tree_count(net).str();
    Json edges = Json::array();
    for (int e = 0; e < net.edge_count(); ++e) {
        const Edge& ed = net.edge(e);
        edges.push_back({{"edge", e},
                         {"probability", edge_probability(dist, e)},
                         {"reff", ed.c * effective_resistance(net, ed.u, ed.v).get()}});
    }
    out["edges"] = edges;
    if (list) out["tree_list"] = dist.trees;
    if (!require.empty() || !forbid.empty()) {
        auto rep = spatial_markov_check(net, require, forbid);
        out["markov"] = {{"equal", rep.equal},
                         {"conditioned_trees", rep.conditioned_trees},
                         {"contracted_trees", rep.contracted_trees},
                         {"max_difference", rep.max_difference}};
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

// ---- transform --------------------------------------------------------------

int cmd_transform(const std::string& path, const std::string& out, const std::string& flow_in, const std::string& flow_out) {
    PlanarMap map = map_from_json(read_json(path));
    auto star = star_tree_transform(map);
    write_text(out, marked_map_to_json(star).dump(2) + "\n");
    if (!flow_in.empty()) {
        Flow theta = flow_from_json(read_json(flow_in));
        Flow moved = transfer_flow(star, theta);
        double e = 0.0;
        for (double x : theta.value) e += x * x;
        log_line(LogLevel::info, Json{{"energy", e}, {"transferred_energy", flow_energy(star.network(), moved)}});
        write_text(flow_out.empty() ? "-" : flow_out, flow_to_json(moved).dump(2) + "\n");
    }
    return 0;
}

// ---- probe ------------------------------------------------------------------

int cmd_probe(const std::string& kind_name, const std::vector<int>& depths, bool growth, const std::vector<int>& ks,
              int ball_depth, double exponent, long max_iter, const std::string& init, const std::string& out) {
    BallKind kind = parse_kind(kind_name);
    if (!growth && depths.empty()) fail(Errc::InvalidInput, "--depths is empty");
    if (growth && ks.empty()) fail(Errc::InvalidInput, "--ks is empty");
    std::string csv;
    int status = 0;
    if (!growth) {
        csv = "depth,vertices,root_radius,iterations\n";
        for (int d : depths) {
            try {
                SolverOptions solver = disc_solver();
                if (max_iter > 0) solver.max_iter = max_iter;
                if (init == "uniform") solver.init = RadiusInit::uniform;
                auto row = cp_type_probe(kind, {d}, solver).front();
                csv += std::to_string(row.depth) + "," + std::to_string(row.vertices) + "," + fmt17(row.root_radius) + "," +
                       std::to_string(row.iterations) + "\n";
            } catch (const Error& e) {
                if (validation_error(e.code())) throw;
                csv += std::to_string(d) + ",failed," + std::string(errc_name(e.code())) + ",\n";
                status = 1;
                break;
            }
        }
    } else {
        GrowthOptions opts;
        opts.exponent = exponent;
        csv = "k,radius,ball_size,reff\n";
        try {
            for (const auto& r : resistance_growth_probe(generate_ball(kind, ball_depth), ks, opts))
                csv += std::to_string(r.k) + "," + fmt17(r.radius) + "," + std::to_string(r.ball_size) + "," +
                       (r.reff.infinite ? std::string("inf") : fmt17(r.reff.value)) + "\n";
        } catch (const Error& e) {
            if (validation_error(e.code())) throw;
            csv += "failed," + std::string(errc_name(e.code())) + ",,\n";
            status = 1;
        }
    }
    write_text(out, csv);
    return status;
}

// ---- magic ------------------------------------------------------------------

int cmd_magic(const std::string& path, int random_n, double delta, int s, int vertex, std::uint64_t seed) {
    PointSet C;
    if (!path.empty()) {
        C = points_from_json(read_json(path));
    } else {
        if (random_n < 2) fail(Errc::InvalidInput, "give a point file or --random N with N ≥ 2");
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < random_n; ++i) C.push_back({u(rng), u(rng)});
    }
    Json out;
    if (vertex >= 0) {
        if (vertex >= static_cast<int>(C.size())) fail(Errc::InvalidInput, "--vertex out of range");
        auto q = support(C, vertex, delta, s);
        out = {{"vertex", vertex}, {"local", q.local}, {"max_cover", q.max_cover}, {"supported", q.supported}};
    } else {
        auto c = count_supported(C, delta, s);
        out = {{"points", C.size()}, {"count", c.count}, {"ratio", c.ratio}};
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

// ---- conformal --------------------------------------------------------------

int cmd_conformal(const std::string& domain, double eps, const std::vector<double>& z0, int grid, double extent,
                  const std::string& out) {
    std::function<double(Point)> inside;
    if (domain == "square") inside = polygon_domain({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
    else if (domain == "disc") inside = [](Point z) { return 1.0 - std::abs(z); };
    else inside = polygon_domain(points_from_json(read_json(domain)));
    if (grid < 1) fail(Errc::InvalidInput, "--grid must be positive");
    Point start = z0.empty() ? Point{0, 0} : Point{z0.at(0), z0.at(1)};
    auto phi = conformal_demo(inside, start, eps);
    std::string csv = "x,y,re,im\n";
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            double x = grid == 1 ? 0.0 : -extent + 2 * extent * i / (grid - 1);
            double y = grid == 1 ? 0.0 : -extent + 2 * extent * j / (grid - 1);
            Point z{x, y};
            if (!phi.covers(z)) continue;
            Point w = phi(z);
            csv += fmt17(x) + "," + fmt17(y) + "," + fmt17(w.real()) + "," + fmt17(w.imag()) + "\n";
        }
    write_text(out, csv);
    log_line(LogLevel::info, Json{{"vertices", phi.lattice.size()}, {"iterations", phi.report.iterations}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Circle packings, electric networks and spanning trees on planar maps.\n"
                 "Exit codes: 0 success, 2 invalid input, 1 computational failure.\n"
                 "Environment: KOEBE_LOG=quiet|info|trace controls the stderr report."};
    app.require_subcommand(1);
    std::uint64_t seed = 1;
    app.add_option("--seed", seed, "Seed for every randomized subroutine")->capture_default_str();

    PackArgs pack;
    auto* p = app.add_subcommand("pack", "Pack a triangulation (or a disc-type map with --disc) and write packing JSON");
    p->add_option("map", pack.map_path, "Map JSON")->required()->check(CLI::ExistingFile);
    p->add_option("-o,--out", pack.out, "Output packing JSON (default stdout)");
    p->add_option("--rho", pack.rho, "Outer radii ρ1 ρ2 ρ3")->expected(3)->check(CLI::PositiveNumber);
    p->add_flag("--disc", pack.disc, "Pack in the unit disc with the outer cycle tangent to the circle");
    p->add_flag("--auto-triangulate", pack.auto_triangulate, "Star-triangulate faces first; helper circles are dropped");
    p->add_option("--tol", pack.tol, "Energy tolerance")->check(CLI::PositiveNumber);
    p->add_option("--max-iter", pack.max_iter, "Iteration limit")->check(CLI::PositiveNumber);
    p->add_option("--init", pack.init, "Initial radii")->check(CLI::IsMember({"uniform", "random", "warm"}));
    app.get_subcommand("pack")->get_option("--rho")->excludes("--disc");

    std::string r_in, r_out, r_flow;
    bool r_labels = false;
    auto* r = app.add_subcommand("render", "Render a packing JSON as SVG");
    r->add_option("packing", r_in, "Packing JSON")->required()->check(CLI::ExistingFile);
    r->add_option("-o,--out", r_out, "Output SVG (default stdout)");
    r->add_flag("--labels", r_labels, "Draw vertex labels");
    r->add_option("--flow", r_flow, "Flow JSON overlay, one value per map edge")->check(CLI::ExistingFile);

    std::string n_in, n_bound, n_aux;
    std::vector<int> n_src, n_snk;
    auto* n = app.add_subcommand("reff", "Effective resistance or a bound on it");
    n->add_option("network", n_in, "Network JSON")->required()->check(CLI::ExistingFile);
    n->add_option("--source", n_src, "Source vertices")->required();
    n->add_option("--sink", n_snk, "Sink vertices")->required();
    n->add_option("--bound", n_bound, "Bound instead of the exact value")
        ->check(CLI::IsMember({"thomson", "dirichlet", "nashwilliams"}));
    n->add_option("--aux", n_aux, "Flow JSON, {\"h\": [...]} or {\"cutsets\": [[...], ...]}")->check(CLI::ExistingFile);

    std::string u_in, u_usf;
    std::vector<int> u_req, u_forb, u_depths;
    bool u_list = false;
    auto* u = app.add_subcommand("ust", "Spanning-tree statistics of a small network, or free/wired USF marginals");
    u->add_option("network", u_in, "Network JSON")->check(CLI::ExistingFile);
    u->add_option("--require", u_req, "Edges conditioned to be in the tree");
    u->add_option("--forbid", u_forb, "Edges conditioned to be absent");
    u->add_flag("--list", u_list, "List every spanning tree");
    u->add_option("--usf", u_usf, "Exhaustion for free/wired marginals")->check(CLI::IsMember({"z2", "tree", "path"}));
    u->add_option("--depths", u_depths, "Exhaustion depths")->delimiter(',');

    std::string t_in, t_out, t_flow, t_flow_out;
    auto* t = app.add_subcommand("transform", "Star-tree transform with edge markings");
    t->add_option("map", t_in, "Map JSON")->required()->check(CLI::ExistingFile);
    t->add_option("-o,--out", t_out, "Output marked map JSON (default stdout)");
    t->add_option("--flow", t_flow, "Flow JSON on the source map to transfer")->check(CLI::ExistingFile);
    t->add_option("--flow-out", t_flow_out, "Output for the transferred flow (default stdout)");

    std::string b_kind = "triangular6", b_out;
    std::vector<int> b_depths, b_ks;
    bool b_growth = false;
    int b_ball = 10;
    double b_exp = 0.5;
    long b_max_iter = 0;
    std::string b_init = "warm";
    auto* b = app.add_subcommand("probe", "Root-radius probe over ball depths, or the resistance growth probe");
    b->add_option("--kind", b_kind, "Ball kind")->check(CLI::IsMember({"triangular6", "hyperbolic7", "grid"}));
    b->add_option("--depths", b_depths, "Ball depths")->delimiter(',');
    b->add_flag("--growth", b_growth, "Run the resistance growth probe");
    b->add_option("--ks", b_ks, "Values of k for the growth probe")->delimiter(',');
    b->add_option("--ball-depth", b_ball, "Ball depth for the growth probe")->check(CLI::PositiveNumber);
    b->add_option("--exponent", b_exp, "B_k radius exponent")->check(CLI::PositiveNumber);
    b->add_option("--max-iter", b_max_iter, "Iteration limit per depth")->check(CLI::PositiveNumber);
    b->add_option("--init", b_init, "Initial radii")->check(CLI::IsMember({"warm", "uniform"}));
    b->add_option("-o,--out", b_out, "Output CSV (default stdout)");

    std::string m_in;
    int m_random = 0, m_s = 2, m_vertex = -1;
    double m_delta = 0.25;
    auto* m = app.add_subcommand("magic", "Supported-point counts and queries");
    m->add_option("points", m_in, "Point set JSON")->check(CLI::ExistingFile);
    m->add_option("--random", m_random, "Use N uniform points in the unit square instead");
    m->add_option("--delta", m_delta, "δ in (0, 1/2]")->check(CLI::Range(1e-9, 0.5));
    m->add_option("--s", m_s, "Support threshold s ≥ 2")->check(CLI::Range(2, 1 << 30));
    m->add_option("--vertex", m_vertex, "Query a single point");

    std::string c_domain = "square", c_out;
    double c_eps = 0.1, c_extent = 0.5;
    std::vector<double> c_z0;
    int c_grid = 11;
    auto* c = app.add_subcommand("conformal", "Discrete conformal map of a domain onto the disc");
    c->add_option("--domain", c_domain, "square, disc, or a JSON polygon file");
    c->add_option("--eps", c_eps, "Lattice spacing")->check(CLI::PositiveNumber);
    c->add_option("--z0", c_z0, "Point mapped to the origin")->expected(2);
    c->add_option("--grid", c_grid, "Test grid points per side")->check(CLI::PositiveNumber);
    c->add_option("--extent", c_extent, "Test grid half-width")->check(CLI::PositiveNumber);
    c->add_option("-o,--out", c_out, "Output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*p) return cmd_pack(pack, seed);
        if (*r) return cmd_render(r_in, r_out, r_labels, r_flow);
        if (*n) return cmd_reff(n_in, n_src, n_snk, n_bound, n_aux);
        if (*u) return cmd_ust(u_in, u_req, u_forb, u_list, u_usf, u_depths);
        if (*t) return cmd_transform(t_in, t_out, t_flow, t_flow_out);
        if (*b) return cmd_probe(b_kind, b_depths, b_growth, b_ks, b_ball, b_exp, b_max_iter, b_init, b_out);
        if (*m) return cmd_magic(m_in, m_random, m_delta, m_s, m_vertex, seed);
        if (*c) return cmd_conformal(c_domain, c_eps, c_z0, c_grid, c_extent, c_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return validation_error(e.code()) ? 2 : 1;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
