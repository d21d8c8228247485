#include "koebe/planar_map.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>

namespace koebe {

namespace {

std::string pair_text(int u, int v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

bool cyclic_match(std::span<const int> a, std::span<const int> b, bool reversed) {
    const std::size_t k = a.size();
    if (b.size() != k) return false;
    if (k == 0) return true;
    for (std::size_t s = 0; s < k; ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
            std::size_t j = reversed ? (s + k - i) % k : (s + i) % k;
            ok = a[i] == b[j];
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace

PlanarMap PlanarMap::build(int n, std::vector<std::vector<int>> rotations, const BuildOptions& opts) {
    if (n < 1) fail(Errc::InvalidInput, "vertex count must be positive");
    if (static_cast<int>(rotations.size()) != n)
        fail(Errc::InvalidInput, "expected " + std::to_string(n) + " rotations, got " + std::to_string(rotations.size()));
    for (int v = 0; v < n; ++v)
        for (int u : rotations[v])
            if (u < 0 || u >= n) fail(Errc::InvalidInput, "neighbor id " + std::to_string(u) + " out of range at vertex " + std::to_string(v), v);
    if (opts.ccw)
        for (auto& r : rotations) std::reverse(r.begin(), r.end());

    PlanarMap m;
    m.n_ = n;
    m.multigraph_ = opts.multigraph;
    m.offset_.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) m.offset_[v + 1] = m.offset_[v] + static_cast<int>(rotations[v].size());
    const int D = m.offset_[n];
    m.head_.resize(D);
    m.tail_.resize(D);
    for (int v = 0; v < n; ++v)
        for (std::size_t i = 0; i < rotations[v].size(); ++i) {
            m.head_[m.offset_[v] + i] = rotations[v][i];
            m.tail_[m.offset_[v] + i] = v;
        }

    // Symmetry: the multiset of (v,u) must equal the multiset of (u,v).
    {
        std::vector<std::pair<int, int>> fwd(D), bwd(D);
        for (int d = 0; d < D; ++d) {
            fwd[d] = {m.tail_[d], m.head_[d]};
            bwd[d] = {m.head_[d], m.tail_[d]};
        }
        std::sort(fwd.begin(), fwd.end());
        std::sort(bwd.begin(), bwd.end());
        auto mm = std::mismatch(fwd.begin(), fwd.end(), bwd.begin());
        if (mm.first != fwd.end()) {
            auto bad = std::min(*mm.first, *mm.second);
            fail(Errc::AsymmetricRotation,
                 "vertex " + std::to_string(bad.second) + " lists " + std::to_string(bad.first) +
                     " a different number of times than the reverse " + pair_text(bad.first, bad.second),
                 bad.first);
        }
    }

    for (int v = 0; v < n; ++v) {
        std::vector<int> seen(rotations[v]);
        std::sort(seen.begin(), seen.end());
        for (std::size_t i = 0; i < seen.size(); ++i) {
            if (seen[i] == v && !(opts.multigraph && !opts.twins.empty()))
                fail(Errc::NotSimple, "self-loop at vertex " + std::to_string(v), v);
            if (i > 0 && seen[i] == seen[i - 1] && !opts.multigraph)
                fail(Errc::NotSimple, "repeated neighbor " + std::to_string(seen[i]) + " at vertex " + std::to_string(v), v);
        }
    }

    m.twin_.assign(D, -1);
    if (!opts.twins.empty()) {
        if (static_cast<int>(opts.twins.size()) != D) fail(Errc::InvalidInput, "twin table has wrong size");
        for (int d = 0; d < D; ++d) {
            int t = opts.twins[d];
            if (t < 0 || t >= D || t == d || opts.twins[t] != d || m.tail_[t] != m.head_[d] || m.head_[t] != m.tail_[d])
                fail(Errc::AsymmetricRotation, "twin table is not a consistent pairing at dart " + std::to_string(d), d);
            m.twin_[d] = t;
        }
    } else if (!opts.multigraph) {
        std::unordered_map<std::uint64_t, int> where;
        where.reserve(D * 2);
        for (int d = 0; d < D; ++d)
            where[static_cast<std::uint64_t>(m.tail_[d]) * static_cast<std::uint64_t>(n) + m.head_[d]] = d;
        for (int d = 0; d < D; ++d)
            m.twin_[d] = where.at(static_cast<std::uint64_t>(m.head_[d]) * static_cast<std::uint64_t>(n) + m.tail_[d]);
    } else {
        // Parallel edges nest: the i-th copy clockwise at u meets the i-th copy
        // counterclockwise at v.
        std::unordered_map<std::uint64_t, std::vector<int>> occ;
        for (int d = 0; d < D; ++d)
            occ[static_cast<std::uint64_t>(m.tail_[d]) * static_cast<std::uint64_t>(n) + m.head_[d]].push_back(d);
        for (int d = 0; d < D; ++d) {
            int u = m.tail_[d], v = m.head_[d];
            if (u == v) fail(Errc::NotSimple, "self-loop needs an explicit twin table", u);
            if (m.twin_[d] >= 0 || u > v) continue;
            auto& a = occ[static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) + v];
            auto& b = occ[static_cast<std::uint64_t>(v) * static_cast<std::uint64_t>(n) + u];
            const std::size_t k = a.size();
            for (std::size_t i = 0; i < k; ++i) {
                m.twin_[a[i]] = b[k - 1 - i];
                m.twin_[b[k - 1 - i]] = a[i];
            }
        }
    }

    m.edge_.assign(D, -1);
    for (int d = 0; d < D; ++d) {
        if (m.edge_[d] >= 0) continue;
        int e = static_cast<int>(m.edge_dart_.size());
        m.edge_dart_.push_back(d);
        m.edge_[d] = e;
        m.edge_[m.twin_[d]] = e;
    }

    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int d = m.offset_[v]; d < m.offset_[v + 1]; ++d) {
            int u = m.head_[d];
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                stack.push_back(u);
            }
        }
    }
    if (reached != n) {
        int missing = static_cast<int>(std::find(seen.begin(), seen.end(), 0) - seen.begin());
        fail(Errc::Disconnected, "vertex " + std::to_string(missing) + " is unreachable from vertex 0", missing);
    }

    m.trace_faces();
    const int euler = n - m.edge_count() + m.face_count();
    if (euler != 2)
        fail(Errc::NonPlanarEulerViolation, "n - m + f = " + std::to_string(n) + " - " + std::to_string(m.edge_count()) +
                                                " + " + std::to_string(m.face_count()) + " = " + std::to_string(euler));

    if (!opts.outer.empty()) {
        int f = find_face(m, opts.outer);
        if (f < 0) fail(Errc::InvalidInput, "outer cycle is not a face of the map");
        m.outer_ = f;
    }
    return m;
}

void PlanarMap::trace_faces() {
    const int D = dart_count();
    faces_.clear();
    face_.assign(D, -1);
    if (D == 0) {
        faces_.push_back(Face{});
        return;
    }
    std::vector<int> order(D);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::tie(tail_[a], head_[a], a) < std::tie(tail_[b], head_[b], b);
    });
    for (int start : order) {
        if (face_[start] >= 0) continue;
        Face f;
        int id = static_cast<int>(faces_.size());
        int d = start;
        do {
            face_[d] = id;
            f.darts.push_back(d);
            d = face_next(d);
        } while (d != start);
        faces_.push_back(std::move(f));
    }
}

int PlanarMap::cw_next(int d) const {
    int t = tail_[d];
    int pos = d - offset_[t] + 1;
    return pos == degree(t) ? offset_[t] : d + 1;
}

int PlanarMap::cw_prev(int d) const {
    int t = tail_[d];
    return d == offset_[t] ? offset_[t + 1] - 1 : d - 1;
}

int PlanarMap::max_degree() const {
    int best = 0;
    for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
}

int PlanarMap::find_dart(int u, int v) const {
    for (int d = offset_[u]; d < offset_[u + 1]; ++d)
        if (head_[d] == v) return d;
    return -1;
}

std::vector<int> PlanarMap::face_vertices(int f) const {
    std::vector<int> out;
    out.reserve(faces_[f].darts.size());
    for (int d : faces_[f].darts) out.push_back(tail_[d]);
    return out;
}

PlanarMap PlanarMap::with_outer_face(int f) const {
    if (f < -1 || f >= face_count()) fail(Errc::InvalidInput, "face id out of range", f);
    PlanarMap copy = *this;
    copy.outer_ = f;
    return copy;
}

std::vector<std::vector<int>> PlanarMap::rotations() const {
    std::vector<std::vector<int>> out(n_);
    for (int v = 0; v < n_; ++v) out[v].assign(rotation(v).begin(), rotation(v).end());
    return out;
}

int find_face(const PlanarMap& map, std::span<const int> cycle) {
    for (bool reversed : {false, true})
        for (int f = 0; f < map.face_count(); ++f) {
            auto verts = map.face_vertices(f);
            if (cyclic_match(cycle, verts, reversed)) return f;
        }
    return -1;
}

std::vector<Face> trace_faces(const PlanarMap& map) { return map.faces(); }

PlanarMap from_faces(int n, const std::vector<std::vector<int>>& faces, int outer) {
    std::vector<std::vector<std::pair<int, int>>> succ(n);
    for (const auto& f : faces) {
        const std::size_t k = f.size();
        for (std::size_t i = 0; i < k; ++i) {
            int prev = f[(i + k - 1) % k], v = f[i], next = f[(i + 1) % k];
            if (v < 0 || v >= n) fail(Errc::InvalidInput, "face vertex out of range");
            succ[v].push_back({prev, next});
        }
    }
    std::vector<std::vector<int>> rot(n);
    for (int v = 0; v < n; ++v) {
        auto& s = succ[v];
        std::sort(s.begin(), s.end());
        for (std::size_t i = 1; i < s.size(); ++i)
            if (s[i].first == s[i - 1].first)
                fail(Errc::NotSimple, "neighbor " + std::to_string(s[i].first) + " repeated around vertex " + std::to_string(v), v);
        if (s.empty()) continue;
        int start = s.front().first;
        int cur = start;
        do {
            rot[v].push_back(cur);
            auto it = std::lower_bound(s.begin(), s.end(), std::pair<int, int>{cur, -1});
            if (it == s.end() || it->first != cur) fail(Errc::InvalidInput, "faces do not close up around vertex " + std::to_string(v), v);
            cur = it->second;
        } while (cur != start && rot[v].size() <= s.size());
        if (rot[v].size() != s.size()) fail(Errc::InvalidInput, "vertex " + std::to_string(v) + " is pinched by the face list", v);
    }
    BuildOptions opts;
    if (outer >= 0) opts.outer = faces.at(outer);
    return PlanarMap::build(n, std::move(rot), opts);
}

std::array<int, 3> Triangulation::outer_vertices() const {
    auto v = map.face_vertices(outer_face);
    return {v[0], v[1], v[2]};
}

std::vector<std::array<int, 3>> Triangulation::inner_triangles() const {
    std::vector<std::array<int, 3>> out;
    out.reserve(map.face_count() - 1);
    for (int f = 0; f < map.face_count(); ++f) {
        if (f == outer_face) continue;
        auto v = map.face_vertices(f);
        out.push_back({v[0], v[1], v[2]});
    }
    return out;
}

bool is_triangulation(const PlanarMap& map) {
    if (map.vertex_count() < 3) return false;
    for (const auto& f : map.faces())
        if (f.degree() != 3) return false;
    for (int v = 0; v < map.vertex_count(); ++v) {
        std::vector<int> r(map.rotation(v).begin(), map.rotation(v).end());
        std::sort(r.begin(), r.end());
        if (std::adjacent_find(r.begin(), r.end()) != r.end()) return false;
        if (std::binary_search(r.begin(), r.end(), v)) return false;
    }
    return map.face_count() == 2 * map.vertex_count() - 4;
}

Triangulation as_triangulation(const PlanarMap& map, int outer_face) {
    if (!is_triangulation(map)) fail(Errc::NotATriangulation, "map is not a simple triangulation");
    int f = outer_face >= 0 ? outer_face : map.outer_face();
    if (f < 0) fail(Errc::MissingOuterFace, "triangulation needs a designated outer face");
    if (f >= map.face_count()) fail(Errc::InvalidInput, "outer face id out of range", f);
    return Triangulation{map.with_outer_face(f), f};
}

namespace {

std::vector<std::vector<int>> all_face_vertices(const PlanarMap& map) {
    std::vector<std::vector<int>> out(map.face_count());
    for (int f = 0; f < map.face_count(); ++f) out[f] = map.face_vertices(f);
    return out;
}

bool has_repeat(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
}

void star_faces(const std::vector<int>& p, int s, std::vector<std::vector<int>>& out) {
    const std::size_t k = p.size();
    for (std::size_t i = 0; i < k; ++i) out.push_back({p[i], p[(i + 1) % k], s});
}

// Ear cuts: p1 first, then the front twice, then alternating back/front.
void zigzag_faces(const std::vector<int>& p, std::vector<std::vector<int>>& out) {
    const std::size_t k = p.size();
    if (k == 3) {
        out.push_back(p);
        return;
    }
    std::vector<int> d(p.begin(), p.end());
    out.push_back({d[0], d[1], d[2]});
    d.erase(d.begin() + 1);
    bool front = true;
    int cuts = 0;
    while (d.size() > 3) {
        if (front) {
            out.push_back({d.back(), d[0], d[1]});
            d.erase(d.begin());
        } else {
            out.push_back({d[d.size() - 2], d.back(), d[0]});
            d.pop_back();
        }
        ++cuts;
        if (cuts >= 2) front = !front;
    }
    out.push_back({d[0], d[1], d[2]});
}

int locate_outer(const std::vector<std::vector<int>>& faces, int a, int b) {
    for (std::size_t i = 0; i < faces.size(); ++i) {
        const auto& f = faces[i];
        for (std::size_t j = 0; j < f.size(); ++j)
            if (f[j] == a && f[(j + 1) % f.size()] == b) return static_cast<int>(i);
    }
    return -1;
}

AugmentedMap finish(const PlanarMap& map, int n, std::vector<std::vector<int>> faces, std::vector<int> added, int excluded_index) {
    int outer = excluded_index;
    if (outer < 0 && map.outer_face() >= 0) {
        const auto& od = map.face(map.outer_face()).darts;
        if (!od.empty()) outer = locate_outer(faces, map.tail(od[0]), map.head(od[0]));
    }
    if (n == 1 && faces.size() == 1 && faces[0].empty()) return {map, {}};
    return AugmentedMap{from_faces(n, faces, outer), std::move(added)};
}

}  // namespace

AugmentedMap triangulate_star(const PlanarMap& map, int excluded_face) {
    auto fv = all_face_vertices(map);
    int n = map.vertex_count();
    std::vector<std::vector<int>> faces;
    std::vector<int> added;
    int excluded_index = -1;
    for (int f = 0; f < map.face_count(); ++f) {
        const auto& p = fv[f];
        if (f == excluded_face) {
            excluded_index = static_cast<int>(faces.size());
            faces.push_back(p);
            continue;
        }
        if (p.size() == 3 || p.empty()) {
            faces.push_back(p);
            continue;
        }
        if (has_repeat(p)) fail(Errc::NotSimple, "face " + std::to_string(f) + " repeats a vertex; a star vertex would create parallel edges", f);
        int s = n++;
        added.push_back(s);
        star_faces(p, s, faces);
    }
    return finish(map, n, std::move(faces), std::move(added), excluded_index);
}

AugmentedMap triangulate_zigzag(const PlanarMap& map, int excluded_face) {
    auto fv = all_face_vertices(map);
    int n = map.vertex_count();
    std::unordered_map<std::uint64_t, char> adj;
    auto key = [](int a, int b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    };
    for (int e = 0; e < map.edge_count(); ++e) {
        auto [u, v] = map.edge_ends(e);
        adj[key(u, v)] = 1;
    }
    std::vector<std::vector<int>> faces;
    std::vector<int> added;
    int excluded_index = -1;
    auto add_edges_of = [&](const std::vector<std::vector<int>>& tri, std::size_t from) {
        for (std::size_t i = from; i < tri.size(); ++i)
            for (std::size_t j = 0; j < tri[i].size(); ++j) adj[key(tri[i][j], tri[i][(j + 1) % tri[i].size()])] = 1;
    };
    for (int f = 0; f < map.face_count(); ++f) {
        const auto& p = fv[f];
        if (f == excluded_face) {
            excluded_index = static_cast<int>(faces.size());
            faces.push_back(p);
            continue;
        }
        const std::size_t k = p.size();
        if (k == 3 || k == 0) {
            faces.push_back(p);
            continue;
        }
        std::size_t from = faces.size();
        if (k < 3) {
            int s = n++;
            added.push_back(s);
            star_faces(p, s, faces);
            add_edges_of(faces, from);
            continue;
        }
        bool chordless = !has_repeat(p);
        for (std::size_t i = 0; i < k && chordless; ++i)
            for (std::size_t j = i + 2; j < k && chordless; ++j) {
                if (i == 0 && j == k - 1) continue;
                if (adj.count(key(p[i], p[j]))) chordless = false;
            }
        if (chordless) {
            zigzag_faces(p, faces);
        } else {
            std::vector<int> u(k);
            for (std::size_t i = 0; i < k; ++i) {
                u[i] = n++;
                added.push_back(u[i]);
            }
            for (std::size_t i = 0; i < k; ++i) {
                std::size_t j = (i + 1) % k;
                faces.push_back({p[i], p[j], u[i]});
                faces.push_back({p[j], u[j], u[i]});
            }
            zigzag_faces(u, faces);
        }
        add_edges_of(faces, from);
    }
    return finish(map, n, std::move(faces), std::move(added), excluded_index);
}

DualMap dual_map(const PlanarMap& map) {
    const int F = map.face_count();
    const int D = map.dart_count();
    std::vector<int> dual_pos(D, -1);
    std::vector<std::vector<int>> rot(F);
    int pos = 0;
    for (int f = 0; f < F; ++f) {
        const auto& darts = map.face(f).darts;
        const int k = static_cast<int>(darts.size());
        for (int j = 0; j < k; ++j) {
            int d = darts[k - 1 - j];
            rot[f].push_back(map.face_of(map.twin(d)));
            dual_pos[d] = pos++;
        }
    }
    BuildOptions opts;
    opts.multigraph = true;
    opts.twins.assign(D, -1);
    for (int d = 0; d < D; ++d) opts.twins[dual_pos[d]] = dual_pos[map.twin(d)];
    DualMap out;
    out.map = PlanarMap::build(F, std::move(rot), opts);
    out.primal_to_dual_edge.assign(map.edge_count(), -1);
    out.dual_to_primal_edge.assign(map.edge_count(), -1);
    for (int e = 0; e < map.edge_count(); ++e) {
        int de = out.map.edge_of(dual_pos[map.edge_dart(e)]);
        out.primal_to_dual_edge[e] = de;
        out.dual_to_primal_edge[de] = e;
    }
    return out;
}

bool maps_isomorphic(const PlanarMap& a, const PlanarMap& b, bool allow_mirror) {
    if (a.vertex_count() != b.vertex_count() || a.dart_count() != b.dart_count() || a.face_count() != b.face_count())
        return false;
    const int D = a.dart_count();
    if (D == 0) return true;
    std::vector<int> img(D), back(D);
    for (bool mirror : {false, true}) {
        if (mirror && !allow_mirror) break;
        for (int start = 0; start < D; ++start) {
            std::fill(img.begin(), img.end(), -1);
            std::fill(back.begin(), back.end(), -1);
            std::vector<int> stack{0};
            img[0] = start;
            back[start] = 0;
            bool ok = true;
            while (!stack.empty() && ok) {
                int x = stack.back();
                stack.pop_back();
                int y = img[x];
                std::pair<int, int> moves[2] = {{a.twin(x), b.twin(y)},
                                                {a.cw_next(x), mirror ? b.cw_prev(y) : b.cw_next(y)}};
                for (auto [xn, yn] : moves) {
                    if (img[xn] < 0 && back[yn] < 0) {
                        img[xn] = yn;
                        back[yn] = xn;
                        stack.push_back(xn);
                    } else if (img[xn] != yn) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) return true;
        }
    }
    return false;
}

PlanarMap delete_vertices(const PlanarMap& map, const std::vector<int>& vertices) {
    std::vector<char> drop(map.vertex_count(), 0);
    for (int v : vertices) drop.at(v) = 1;
    std::vector<int> id(map.vertex_count(), -1);
    int n = 0;
    for (int v = 0; v < map.vertex_count(); ++v)
        if (!drop[v]) id[v] = n++;
    std::vector<std::vector<int>> rot(n);
    for (int v = 0; v < map.vertex_count(); ++v) {
        if (drop[v]) continue;
        for (int u : map.rotation(v))
            if (!drop[u]) rot[id[v]].push_back(id[u]);
    }
    BuildOptions opts;
    opts.multigraph = map.multigraph();
    return PlanarMap::build(n, std::move(rot), opts);
}

}  // namespace koebe
