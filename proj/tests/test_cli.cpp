#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "koebe/io.hpp"

using namespace koebe;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
    std::string err;
};

fs::path workdir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "koebe_test_cli";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Run run(const std::string& args) {
    fs::path out = workdir() / "stdout.txt", err = workdir() / "stderr.txt";
    std::string cmd = "cd '" + workdir().string() + "' && KOEBE_LOG=quiet '" KOEBE_CLI_PATH "' " + args + " > '" +
                      out.string() + "' 2> '" + err.string() + "'";
    int raw = std::system(cmd.c_str());
    Run r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> row;
        std::istringstream l(line);
        for (std::string cell; std::getline(l, cell, ',');) row.push_back(cell);
        rows.push_back(row);
    }
    return rows;
}

void put(const std::string& name, const Json& j) { write_json(workdir() / name, j); }

struct Inputs {
    Inputs() {
        put("k4.json", map_to_json(fixtures::k4()));
        put("oct.json", map_to_json(fixtures::octahedron()));
        put("cube.json", map_to_json(fixtures::cube()));
        put("hex.json", map_to_json(generate_ball(BallKind::triangular6, 3).map));
        put("rt.json", map_to_json(random_triangulation(120, 3).map));
        put("path5.json", network_to_json(path_network(5)));
        put("diamond.json", network_to_json(diamond_network()));
        put("triangle_net.json", network_to_json(network_from_map(fixtures::triangle())));
        put("cuts.json", Json{{"cutsets", {{0}, {1}, {2}, {3}, {4}}}});
        put("flow5.json", flow_to_json(Flow{{1, 1, 1, 1, 1}}));
        put("h5.json", Json{{"h", {0, 0.2, 0.4, 0.6, 0.8, 1.0}}});
        std::ofstream(workdir() / "broken.json") << "{ not json";
    }
};

const Inputs& inputs() {
    static Inputs in;
    return in;
}

}  // namespace

TEST_CASE("help and parse errors") {
    inputs();
    CHECK(run("--help").status == 0);
    CHECK(run("pack --help").status == 0);
    CHECK(run("").status == 2);
    CHECK(run("nonsense").status == 2);
    CHECK(run("reff path5.json --source 0").status == 2);
    CHECK(run("pack missing.json").status == 2);
    CHECK(run("pack broken.json").status == 2);
}

TEST_CASE("pack: K4 interior radius against the Descartes oracle") {
    inputs();
    Run r = run("pack k4.json -o k4_packing.json");
    REQUIRE(r.status == 0);
    PackingFile f = packing_from_json(read_json(workdir() / "k4_packing.json"));
    auto [lo, hi] = std::minmax_element(f.packing.radius.begin(), f.packing.radius.end());
    // Three unit circles: curvature k4 = 3 + 2√3 from Descartes' theorem.
    CHECK(*lo / *hi == doctest::Approx(1.0 / (3.0 + 2.0 * std::sqrt(3.0))).epsilon(1e-9));
    CHECK(verify_packing(f.packing, f.map, 1e-6).pass);
}

TEST_CASE("pack: unequal outer radii and the report stream") {
    inputs();
    fs::path out = workdir() / "err.txt";
    std::string cmd = "cd '" + workdir().string() + "' && KOEBE_LOG=info '" KOEBE_CLI_PATH
                      "' pack rt.json --rho 1 2 3 -o rt_packing.json 2> '" + out.string() + "'";
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::istringstream lines(slurp(out));
    int iteration_lines = 0, report_lines = 0;
    for (std::string line; std::getline(lines, line);) {
        Json j = Json::parse(line);
        if (j.contains("iteration")) ++iteration_lines;
        if (j.contains("report")) {
            ++report_lines;
            CHECK(j["report"]["verified"].get<bool>());
        }
    }
    CHECK(iteration_lines > 0);
    CHECK(report_lines == 1);
    PackingFile f = packing_from_json(read_json(workdir() / "rt_packing.json"));
    CHECK(verify_packing(f.packing, f.map, 1e-6 * 3).pass);
}

TEST_CASE("pack: validation and computational failures") {
    inputs();
    CHECK(run("pack cube.json").status == 2);
    CHECK(run("pack k4.json --rho 1 -1 1").status == 2);
    CHECK(run("pack k4.json --rho 1 1 1 --disc").status == 2);
    CHECK(run("pack rt.json --max-iter 3 --init uniform").status == 1);
}

TEST_CASE("pack: auto-triangulation strips helper circles") {
    inputs();
    REQUIRE(run("pack cube.json --auto-triangulate -o cube_packing.json").status == 0);
    PackingFile f = packing_from_json(read_json(workdir() / "cube_packing.json"));
    CHECK(f.packing.size() == 8);
    double rmax = *std::max_element(f.packing.radius.begin(), f.packing.radius.end());
    CHECK(verify_packing(f.packing, fixtures::cube(), 1e-6 * rmax).pass);
}

TEST_CASE("pack --disc: boundary circles touch the unit circle") {
    inputs();
    REQUIRE(run("pack hex.json --disc -o hex_packing.json").status == 0);
    PackingFile f = packing_from_json(read_json(workdir() / "hex_packing.json"));
    auto boundary = f.map.face_vertices(f.map.outer_face());
    REQUIRE(boundary.size() == 18);
    for (int v : boundary) CHECK(std::abs(std::abs(f.packing.center[v]) + f.packing.radius[v] - 1.0) < 1e-6);
    for (int v = 0; v < f.packing.size(); ++v) CHECK(std::abs(f.packing.center[v]) + f.packing.radius[v] < 1.0 + 1e-6);
    CHECK(verify_packing(f.packing, f.map, 1e-6).pass);
}

TEST_CASE("render: six circles, deterministic, rejects empty packings") {
    inputs();
    REQUIRE(run("pack oct.json -o oct_packing.json").status == 0);
    REQUIRE(run("render oct_packing.json -o a.svg --labels").status == 0);
    REQUIRE(run("render oct_packing.json -o b.svg --labels").status == 0);
    std::string a = slurp(workdir() / "a.svg");
    CHECK(a == slurp(workdir() / "b.svg"));
    std::size_t circles = 0;
    for (auto p = a.find("<circle"); p != std::string::npos; p = a.find("<circle", p + 1)) ++circles;
    CHECK(circles == 6);

    put("oct_flow.json", flow_to_json(Flow{std::vector<double>(12, 0.5)}));
    Run flow = run("render oct_packing.json --flow oct_flow.json");
    CHECK(flow.status == 0);
    CHECK(flow.out.find("<line") != std::string::npos);

    Json empty = read_json(workdir() / "oct_packing.json");
    empty["centers"] = Json::array();
    empty["radii"] = Json::array();
    put("empty_packing.json", empty);
    CHECK(run("render empty_packing.json").status == 2);
}

TEST_CASE("reff: printed values and bounds") {
    inputs();
    Run p = run("reff path5.json --source 0 --sink 5");
    CHECK(p.status == 0);
    CHECK(p.out == "5.00000000000\n");
    CHECK(run("reff diamond.json --source 0 --sink 3").out == "1.00000000000\n");
    CHECK(run("reff path5.json --source 0 --sink 5 --bound nashwilliams --aux cuts.json").out == "5.00000000000\n");
    CHECK(run("reff path5.json --source 0 --sink 5 --bound thomson --aux flow5.json").out == "5.00000000000\n");
    CHECK(run("reff path5.json --source 0 --sink 5 --bound dirichlet --aux h5.json").out == "5.00000000000\n");
    CHECK(run("reff path5.json --source 0 --sink 9").status == 2);
    CHECK(run("reff path5.json --source 0 --sink 0").status == 2);
    CHECK(run("reff path5.json --source 0 --sink 5 --bound thomson").status == 2);
}

TEST_CASE("ust: tree statistics, Markov check and USF sequences") {
    inputs();
    Run r = run("ust triangle_net.json --require 0 --list");
    REQUIRE(r.status == 0);
    Json j = Json::parse(r.out);
    CHECK(j["trees"] == 3);
    CHECK(j["matrix_tree"] == "3");
    CHECK(j["tree_list"].size() == 3);
    for (const auto& e : j["edges"]) CHECK(std::abs(e["probability"].get<double>() - e["reff"].get<double>()) < 1e-12);
    CHECK(j["markov"]["equal"].get<bool>());

    Run usf = run("ust --usf path --depths 1,2,3");
    REQUIRE(usf.status == 0);
    auto rows = csv(usf.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"depth", "free", "wired"});
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) == 1.0);
    CHECK(run("ust").status == 2);
}

TEST_CASE("transform: marked map and transferred flow") {
    inputs();
    REQUIRE(run("transform k4.json -o k4_star.json").status == 0);
    MarkedMap m = marked_map_from_json(read_json(workdir() / "k4_star.json"));
    CHECK(m.map.vertex_count() == 4 + 6 + 4 * 3);
    for (int v = 0; v < m.map.vertex_count(); ++v) CHECK(m.map.degree(v) <= 3);
    put("k4_flow.json", flow_to_json(Flow{{1, 0, 0, 0, 0, 0}}));
    REQUIRE(run("transform k4.json -o k4_star.json --flow k4_flow.json --flow-out k4_star_flow.json").status == 0);
    Flow moved = flow_from_json(read_json(workdir() / "k4_star_flow.json"));
    CHECK(static_cast<int>(moved.value.size()) == m.map.edge_count());
    put("multi.json", map_to_json(PlanarMap::build(2, {{1, 1}, {0, 0}}, {.multigraph = true, .outer = {}, .twins = {}})));
    CHECK(run("transform multi.json").status == 2);
}

TEST_CASE("probe: radius columns and failure rows") {
    inputs();
    Run tri = run("probe --kind triangular6 --depths 2,3,4,5,6 -o tri.csv");
    REQUIRE(tri.status == 0);
    auto rows = csv(slurp(workdir() / "tri.csv"));
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"depth", "vertices", "root_radius", "iterations"});
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][2]) < std::stod(rows[i - 1][2]));

    Run hyp = run("probe --kind hyperbolic7 --depths 2,3,4,5");
    REQUIRE(hyp.status == 0);
    rows = csv(hyp.out);
    REQUIRE(rows.size() == 5);
    double first = std::stod(rows[1][2]), last = std::stod(rows[4][2]);
    CHECK(last > 0.5 * first);
    CHECK(std::abs(last - std::stod(rows[3][2])) / last < 0.1);

    CHECK(run("probe --depths \"\"").status == 2);
    CHECK(run("probe --kind square --depths 2").status == 2);

    Run fail = run("probe --depths 2,3,8 --max-iter 2000 --init uniform");
    CHECK(fail.status == 1);
    rows = csv(fail.out);
    REQUIRE(rows.size() >= 3);
    CHECK(rows.back()[1] == "failed");
    CHECK(rows[1][0] == "2");
}

TEST_CASE("probe --growth writes a (k, radius, |B_k|, Reff) table") {
    inputs();
    Run g = run("probe --growth --ks 2,4,8 --ball-depth 8");
    REQUIRE(g.status == 0);
    auto rows = csv(g.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"k", "radius", "ball_size", "reff"});
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][3]) >= std::stod(rows[i - 1][3]));
    CHECK(run("probe --growth --ks \"\"").status == 2);
}

TEST_CASE("magic and conformal") {
    inputs();
    put("pts.json", points_to_json({{0, 0}, {0.5, 0}, {0.25, 0.4}, {5, 5}}));
    Run m = run("magic pts.json --delta 0.25 --s 2");
    REQUIRE(m.status == 0);
    Json j = Json::parse(m.out);
    CHECK(j["points"] == 4);
    CHECK(run("magic pts.json --vertex 0").status == 0);
    CHECK(run("magic pts.json --vertex 9").status == 2);
    CHECK(run("magic pts.json --delta 0.9").status == 2);
    CHECK(run("magic").status == 2);

    Run c = run("conformal --domain square --eps 0.2 --grid 3 --extent 0.3");
    REQUIRE(c.status == 0);
    auto rows = csv(c.out);
    REQUIRE(rows.size() == 10);
    CHECK(std::hypot(std::stod(rows[5][2]), std::stod(rows[5][3])) < 1e-9);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::hypot(std::stod(rows[i][2]), std::stod(rows[i][3])) < 1.0);
    CHECK(run("conformal --eps -1").status == 2);
}

TEST_CASE("identical seeds give identical outputs") {
    inputs();
    std::string a = run("--seed 5 magic --random 40").out;
    CHECK(a == run("--seed 5 magic --random 40").out);

    REQUIRE(run("--seed 9 pack rt.json --init random -o s1.json").status == 0);
    REQUIRE(run("--seed 9 pack rt.json --init random -o s2.json").status == 0);
    CHECK(slurp(workdir() / "s1.json") == slurp(workdir() / "s2.json"));
    REQUIRE(run("--seed 10 pack rt.json --init random -o s3.json").status == 0);
    CHECK(slurp(workdir() / "s1.json") != slurp(workdir() / "s3.json"));
}
