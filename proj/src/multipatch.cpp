#include "igac2/multipatch.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace igac2 {

const std::array<SquareSymmetry, 8>& SquareSymmetry::all() {
    static const std::array<SquareSymmetry, 8> table = {{
        {false, false, false},
        {false, true, false},
        {false, false, true},
        {false, true, true},
        {true, false, false},
        {true, true, false},
        {true, false, true},
        {true, true, true},
    }};
    return table;
}

BilinearPatch BilinearPatch::reparam(const SquareSymmetry& s) const {
    BilinearPatch out;
    out.c00 = eval(s(Vec2(0, 0))[0], s(Vec2(0, 0))[1]);
    out.c10 = eval(s(Vec2(1, 0))[0], s(Vec2(1, 0))[1]);
    out.c01 = eval(s(Vec2(0, 1))[0], s(Vec2(0, 1))[1]);
    out.c11 = eval(s(Vec2(1, 1))[0], s(Vec2(1, 1))[1]);
    return out;
}

double BilinearPatch::diameter() const {
    double d = 0.0;
    const std::array<Vec2, 4> c = {c00, c10, c11, c01};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) d = std::max(d, (c[i] - c[j]).norm());
    return d;
}

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

void validate_patch(const BilinearPatch& p, int idx) {
    const std::array<Vec2, 4> c = {p.c00, p.c10, p.c11, p.c01};  // ccw
    const double scale = p.diameter() * p.diameter();
    for (int i = 0; i < 4; ++i) {
        const Vec2 e0 = c[(i + 1) % 4] - c[i];
        const Vec2 e1 = c[(i + 2) % 4] - c[(i + 1) % 4];
        if (cross2(e0, e1) <= 1e-12 * scale)
            throw GeometryError("patch " + std::to_string(idx) +
                                ": corners must form a strictly convex counterclockwise quad");
    }
}

struct CornerCluster {
    std::vector<Vec2>& points;
    double tol;
    int find_or_add(const Vec2& x) {
        for (size_t i = 0; i < points.size(); ++i)
            if ((points[i] - x).norm() < tol) return static_cast<int>(i);
        points.push_back(x);
        return static_cast<int>(points.size() - 1);
    }
};

SquareSymmetry find_symmetry(const BilinearPatch& p, const Vec2& at00, const Vec2* at10,
                             const Vec2* at01, double tol) {
    for (const auto& s : SquareSymmetry::all()) {
        const BilinearPatch rp = p.reparam(s);
        if ((rp.c00 - at00).norm() > tol) continue;
        if (at10 && (rp.c10 - *at10).norm() > tol) continue;
        if (at01 && (rp.c01 - *at01).norm() > tol) continue;
        return s;
    }
    throw TopologyError("no square symmetry matches the requested corner placement");
}

}  // namespace

std::pair<Vec2, Vec2> local_edge_points(const BilinearPatch& p, int local_edge) {
    switch (local_edge) {
        case 0: return {p.c00, p.c10};
        case 1: return {p.c10, p.c11};
        case 2: return {p.c11, p.c01};
        case 3: return {p.c01, p.c00};
        default: throw InvalidParameterError("local_edge must be 0..3");
    }
}

GeometryJet geometry_jet(const BilinearPatch& patch, const Vec2& xi) {
    if (xi[0] < -1e-12 || xi[0] > 1 + 1e-12 || xi[1] < -1e-12 || xi[1] > 1 + 1e-12)
        throw OutOfDomainError("geometry_jet: parameter outside [0,1]^2");
    GeometryJet jet;
    jet.x = patch.eval(xi[0], xi[1]);
    jet.J = patch.jacobian(xi[0], xi[1]);
    jet.mixed = patch.mixed();
    jet.detJ = jet.J.determinant();
    if (jet.detJ <= 0.0) throw GeometryError("geometry_jet: degenerate geometry (det J <= 0)");
    const Mat2 Jinv = jet.J.inverse();
    jet.K = Jinv.transpose() * Jinv * std::abs(jet.detJ);
    return jet;
}

Vec2 inverse_map(const BilinearPatch& patch, const Vec2& x) {
    const double diam = patch.diameter();
    auto newton = [&](Vec2 xi) -> std::pair<bool, Vec2> {
        for (int it = 0; it < 60; ++it) {
            const Vec2 res = patch.eval(xi[0], xi[1]) - x;
            if (res.norm() < 1e-13 * diam) return {true, xi};
            const Mat2 J = patch.jacobian(xi[0], xi[1]);
            if (std::abs(J.determinant()) < 1e-14 * diam * diam) break;
            xi -= J.inverse() * res;
            xi[0] = std::clamp(xi[0], -0.25, 1.25);
            xi[1] = std::clamp(xi[1], -0.25, 1.25);
        }
        return {false, xi};
    };
    auto [ok, xi] = newton(Vec2(0.5, 0.5));
    if (!ok) {
        // multi-start fallback
        double best = std::numeric_limits<double>::max();
        Vec2 start(0.5, 0.5);
        for (int i = 0; i <= 10 && !ok; ++i)
            for (int j = 0; j <= 10; ++j) {
                const Vec2 c(i / 10.0, j / 10.0);
                const double r = (patch.eval(c[0], c[1]) - x).norm();
                if (r < best) {
                    best = r;
                    start = c;
                }
            }
        std::tie(ok, xi) = newton(start);
    }
    if (!ok) throw GeometryError("inverse_map: no convergence (point outside patch?)");
    if (xi[0] < -1e-9 || xi[0] > 1 + 1e-9 || xi[1] < -1e-9 || xi[1] > 1 + 1e-9)
        throw GeometryError("inverse_map: point outside patch image");
    xi[0] = std::clamp(xi[0], 0.0, 1.0);
    xi[1] = std::clamp(xi[1], 0.0, 1.0);
    return xi;
}

MultiPatchDomain build_topology(const std::vector<BilinearPatch>& patches) {
    if (patches.size() < 1) throw TopologyError("domain needs at least one patch");
    MultiPatchDomain dom;
    dom.patches = patches;

    Vec2 lo = patches[0].c00, hi = patches[0].c00;
    for (const auto& p : patches)
        for (const Vec2& c : {p.c00, p.c10, p.c11, p.c01}) {
            lo = lo.cwiseMin(c);
            hi = hi.cwiseMax(c);
        }
    dom.diameter = (hi - lo).norm();
    const double tol = 1e-9 * dom.diameter;

    for (size_t i = 0; i < patches.size(); ++i) validate_patch(patches[i], static_cast<int>(i));

    CornerCluster cluster{dom.corner_points, tol};
    // corner_ids[p][t]: cluster id of corner t (ccw order c00,c10,c11,c01)
    std::vector<std::array<int, 4>> corner_ids(patches.size());
    for (size_t p = 0; p < patches.size(); ++p) {
        const std::array<Vec2, 4> cs = {patches[p].c00, patches[p].c10, patches[p].c11,
                                        patches[p].c01};
        for (int t = 0; t < 4; ++t) corner_ids[p][t] = cluster.find_or_add(cs[t]);
    }

    // T-junction detection: a corner in the interior of another patch's edge.
    for (const Vec2& c : dom.corner_points)
        for (size_t p = 0; p < patches.size(); ++p)
            for (int e = 0; e < 4; ++e) {
                const auto [a, b] = local_edge_points(patches[p], e);
                if ((c - a).norm() < tol || (c - b).norm() < tol) continue;
                const Vec2 ab = b - a;
                const double t = (c - a).dot(ab) / ab.squaredNorm();
                if (t > 0.0 && t < 1.0 && (a + t * ab - c).norm() < tol)
                    throw TopologyError("T-junction: patch corner lies inside another edge");
            }

    // Match edges by their (unordered) endpoint cluster pair.
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edge_map;  // -> (patch, local)
    for (size_t p = 0; p < patches.size(); ++p)
        for (int e = 0; e < 4; ++e) {
            int u = corner_ids[p][e], v = corner_ids[p][(e + 1) % 4];
            edge_map[{std::min(u, v), std::max(u, v)}].push_back({static_cast<int>(p), e});
        }

    std::map<std::pair<int, int>, int> interface_of_edge;  // edge key -> interface id
    for (const auto& [key, owners] : edge_map) {
        if (owners.size() == 1) {
            dom.boundary_edges.push_back({owners[0].first, owners[0].second});
        } else if (owners.size() == 2) {
            Interface itf;
            itf.id = static_cast<int>(dom.interfaces.size());
            // Deterministic direction: from the lexicographically smaller endpoint.
            const Vec2 pa = dom.corner_points[key.first];
            const Vec2 pb = dom.corner_points[key.second];
            const bool a_first = pa[0] < pb[0] - tol || (std::abs(pa[0] - pb[0]) <= tol && pa[1] < pb[1]);
            const int start = a_first ? key.first : key.second;
            const int stop = a_first ? key.second : key.first;
            itf.endpoint_cluster[0] = start;
            itf.endpoint_cluster[1] = stop;
            const Vec2 A = dom.corner_points[start], B = dom.corner_points[stop];
            for (int sdx = 0; sdx < 2; ++sdx) {
                itf.patch[sdx] = owners[sdx].first;
                itf.sym[sdx] = find_symmetry(patches[owners[sdx].first], A, nullptr, &B, tol);
            }
            interface_of_edge[key] = itf.id;
            dom.interfaces.push_back(itf);
        } else {
            throw TopologyError("inconsistent edge matching: edge shared by 3+ patches");
        }
    }
    std::set<std::pair<int, int>> boundary_keys;
    for (const auto& [key, owners] : edge_map)
        if (owners.size() == 1) boundary_keys.insert(key);

    // Vertex fans.
    const int ncl = static_cast<int>(dom.corner_points.size());
    for (int v = 0; v < ncl; ++v) {
        struct Adj {
            int patch;
            std::pair<int, int> start_key, end_key;  // ccw-outgoing and ccw-incoming edges
            int start_other, end_other;              // far endpoint cluster of those edges
        };
        std::vector<Adj> adj;
        std::set<std::pair<int, int>> vertex_edges;
        for (size_t p = 0; p < patches.size(); ++p)
            for (int t = 0; t < 4; ++t)
                if (corner_ids[p][t] == v) {
                    Adj a;
                    a.patch = static_cast<int>(p);
                    const int nx = corner_ids[p][(t + 1) % 4];
                    const int pv = corner_ids[p][(t + 3) % 4];
                    a.start_key = {std::min(v, nx), std::max(v, nx)};
                    a.end_key = {std::min(v, pv), std::max(v, pv)};
                    a.start_other = nx;
                    a.end_other = pv;
                    vertex_edges.insert(a.start_key);
                    vertex_edges.insert(a.end_key);
                    adj.push_back(a);
                }
        if (adj.empty()) continue;
        const int valency = static_cast<int>(vertex_edges.size());
        bool on_boundary = false;
        for (const auto& k : vertex_edges)
            if (boundary_keys.count(k)) on_boundary = true;
        if (valency < 3) continue;  // boundary vertices of valency two are not vertices here

        // Chain the fan counterclockwise: the ccw-incoming edge (end_key) of a
        // patch is the ccw-outgoing edge (start_key) of its successor.
        std::map<std::pair<int, int>, int> by_start;
        for (size_t i = 0; i < adj.size(); ++i) by_start[adj[i].start_key] = static_cast<int>(i);
        int first = 0;
        if (on_boundary) {
            first = -1;
            for (size_t i = 0; i < adj.size(); ++i)
                if (boundary_keys.count(adj[i].start_key)) first = static_cast<int>(i);
            if (first < 0) throw TopologyError("boundary vertex fan has no boundary start edge");
        } else {
            for (size_t i = 1; i < adj.size(); ++i)
                if (adj[i].patch < adj[first].patch) first = static_cast<int>(i);
        }
        VertexFan fan;
        fan.id = static_cast<int>(dom.vertices.size());
        fan.pos = dom.corner_points[v];
        fan.boundary = on_boundary;
        fan.valency = valency;
        int cur = first;
        for (size_t step = 0; step < adj.size(); ++step) {
            const Adj& a = adj[cur];
            fan.patches.push_back(a.patch);
            const Vec2 e_start = dom.corner_points[a.start_other];
            const Vec2 e_end = dom.corner_points[a.end_other];
            fan.syms.push_back(find_symmetry(patches[a.patch], fan.pos, &e_start, &e_end, tol));
            const bool last = step + 1 == adj.size();
            if (interface_of_edge.count(a.end_key)) {
                fan.interfaces.push_back(interface_of_edge[a.end_key]);
                if (!last) {
                    auto it = by_start.find(a.end_key);
                    if (it == by_start.end())
                        throw TopologyError("vertex fan does not chain consistently");
                    cur = it->second;
                }
            } else if (!last || !on_boundary) {
                throw TopologyError("vertex fan interrupted by a boundary edge");
            }
        }
        if (!on_boundary && fan.interfaces.size() != fan.patches.size())
            throw TopologyError("inner vertex fan does not close");
        if (on_boundary && fan.interfaces.size() + 1 != fan.patches.size() + (fan.patches.size() ? 1u : 0u) &&
            fan.interfaces.size() != fan.patches.size() - 1)
            throw TopologyError("boundary vertex fan inconsistent");
        dom.vertices.push_back(std::move(fan));
    }
    return dom;
}

MultiPatchDomain parse_domain(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw InvalidParameterError(std::string("malformed domain file: ") + e.what());
    }
    if (!j.contains("patches") || !j["patches"].is_array())
        throw InvalidParameterError("malformed domain file: missing 'patches' array");
    std::vector<BilinearPatch> patches;
    for (const auto& pj : j["patches"]) {
        if (!pj.is_array() || pj.size() != 4)
            throw InvalidParameterError("malformed domain file: each patch needs 4 corners");
        auto pt = [&](int i) -> Vec2 {
            if (!pj[i].is_array() || pj[i].size() != 2)
                throw InvalidParameterError("malformed domain file: corner must be [x,y]");
            return {pj[i][0].get<double>(), pj[i][1].get<double>()};
        };
        BilinearPatch p;
        p.c00 = pt(0);
        p.c10 = pt(1);
        p.c11 = pt(2);
        p.c01 = pt(3);
        patches.push_back(p);
    }
    return build_topology(patches);
}

MultiPatchDomain load_domain(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open domain file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_domain(ss.str());
}

}  // namespace igac2
