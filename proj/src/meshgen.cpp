#include "steklov/meshgen.hpp"

#include "steklov/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace steklov {

void TriMesh::rebuild_partition() {
    std::vector<char> on_boundary(nodes.size(), 0);
    for (const auto& e : boundary_edges) {
        on_boundary[e.a] = 1;
        on_boundary[e.b] = 1;
    }
    boundary_nodes.clear();
    interior_nodes.clear();
    for (int i = 0; i < n_nodes(); ++i)
        (on_boundary[i] ? boundary_nodes : interior_nodes).push_back(i);
}

double triangle_area(const TriMesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    const Vec2 a = mesh.nodes[tri[0]], b = mesh.nodes[tri[1]], c = mesh.nodes[tri[2]];
    return 0.5 * cross(b - a, c - a);
}

double mesh_area(const TriMesh& mesh) {
    double s = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t) s += triangle_area(mesh, t);
    return s;
}

namespace {

double lerp01(double a, double b, double t) { return (1.0 - t) * a + t * b; }

Vec2 lerp01(Vec2 a, Vec2 b, double t) { return {lerp01(a.x, b.x, t), lerp01(a.y, b.y, t)}; }

// Area centroid of a simple polygon.
Vec2 polygon_centroid(const std::vector<Vec2>& loop) {
    double a2 = 0.0, cx = 0.0, cy = 0.0;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = loop[i];
        const Vec2& q = loop[(i + 1) % n];
        const double w = cross(p, q);
        a2 += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    return {cx / (3.0 * a2), cy / (3.0 * a2)};
}

// Radial star mesh of a region bounded by an already-indexed CCW polygon:
// scaled copies of the polygon toward its centroid, center fan innermost.
// Appends nodes/triangles to `mesh`; returns the new strictly-interior nodes.
std::vector<int> mesh_star_region(TriMesh& mesh, const std::vector<int>& polygon_idx,
                                  double h) {
    const int nb = int(polygon_idx.size());
    std::vector<Vec2> poly(nb);
    for (int k = 0; k < nb; ++k) poly[k] = mesh.nodes[polygon_idx[k]];
    const Vec2 c = polygon_centroid(poly);

    double r_mean = 0.0;
    for (const Vec2& p : poly) r_mean += norm(p - c);
    r_mean /= nb;
    const int n_r = std::max(2, int(std::lround(r_mean / h)));

    std::vector<int> interior;
    const int center = mesh.n_nodes();
    mesh.nodes.push_back(c);
    interior.push_back(center);

    // rings[j] for j = 1..n_r; ring n_r is the boundary polygon itself.
    std::vector<std::vector<int>> rings(n_r + 1);
    rings[n_r] = polygon_idx;
    for (int j = 1; j < n_r; ++j) {
        rings[j].resize(nb);
        const double t = double(j) / n_r;
        for (int k = 0; k < nb; ++k) {
            rings[j][k] = mesh.n_nodes();
            mesh.nodes.push_back(lerp01(c, poly[k], t));
            interior.push_back(rings[j][k]);
        }
    }

    for (int k = 0; k < nb; ++k)
        mesh.triangles.push_back({center, rings[1][k], rings[1][(k + 1) % nb]});
    for (int j = 1; j < n_r; ++j) {
        for (int k = 0; k < nb; ++k) {
            const int i0 = rings[j][k], i1 = rings[j][(k + 1) % nb];
            const int o0 = rings[j + 1][k], o1 = rings[j + 1][(k + 1) % nb];
            mesh.triangles.push_back({i0, o0, o1});
            mesh.triangles.push_back({i0, o1, i1});
        }
    }
    return interior;
}

} // namespace

DumbbellMesh mesh_dumbbell(const DumbbellGeometry& geom_in, double h, int n_y) {
    if (!(h > 0.0)) throw InvalidArgument("mesh_dumbbell: h must be positive");
    if (n_y < 2 || n_y % 2 != 0) throw InvalidArgument("mesh_dumbbell: n_y must be even and >= 2");

    const double L = geom_in.spec.L;
    const int n_x = int(std::ceil(L / h - 1e-9));
    const DumbbellGeometry geom = resample_tube(geom_in, n_x);

    const auto& bot = geom.chain(BoundaryTag::TubeMinus).points; // left to right
    const auto& top_rl = geom.chain(BoundaryTag::TubePlus).points; // right to left
    const auto& arc1 = geom.chain(BoundaryTag::D1).points; // a_top .. a_bot
    const auto& arc2 = geom.chain(BoundaryTag::D2).points; // b_bot .. b_top

    DumbbellMesh dm;
    dm.geom = geom;
    dm.n_x = n_x;
    dm.n_y = n_y;
    TriMesh& mesh = dm.tri;

    // Tube block nodes; node (i, j) interpolates between the side chains.
    auto idx = [n_y](int i, int j) { return i * (n_y + 1) + j; };
    mesh.nodes.resize(std::size_t(n_x + 1) * (n_y + 1));
    for (int i = 0; i <= n_x; ++i) {
        const Vec2 lower = bot[i];
        const Vec2 upper = top_rl[n_x - i];
        for (int j = 0; j <= n_y; ++j)
            mesh.nodes[idx(i, j)] = lerp01(lower, upper, double(j) / n_y);
    }
    for (int i = 0; i < n_x; ++i) {
        for (int j = 0; j < n_y; ++j) {
            const int n00 = idx(i, j), n10 = idx(i + 1, j);
            const int n11 = idx(i + 1, j + 1), n01 = idx(i, j + 1);
            mesh.triangles.push_back({n00, n10, n11});
            mesh.triangles.push_back({n00, n11, n01});
        }
    }

    // Disk region polygons (CCW): junction face column plus the arc chain.
    std::vector<int> poly1; // up the left face, then D1 arc back down
    for (int j = 0; j <= n_y; ++j) poly1.push_back(idx(0, j));
    std::vector<int> arc1_idx;
    for (std::size_t k = 1; k + 1 < arc1.size(); ++k) {
        arc1_idx.push_back(mesh.n_nodes());
        mesh.nodes.push_back(arc1[k]);
    }
    poly1.insert(poly1.end(), arc1_idx.begin(), arc1_idx.end());

    std::vector<int> poly2; // down the right face, then D2 arc back up
    for (int j = n_y; j >= 0; --j) poly2.push_back(idx(n_x, j));
    std::vector<int> arc2_idx;
    for (std::size_t k = 1; k + 1 < arc2.size(); ++k) {
        arc2_idx.push_back(mesh.n_nodes());
        mesh.nodes.push_back(arc2[k]);
    }
    // poly2 must continue CCW from b_bot along the arc; arc2 runs b_bot -> b_top.
    poly2.insert(poly2.end(), arc2_idx.begin(), arc2_idx.end());

    dm.disk1_interior = mesh_star_region(mesh, poly1, h);
    dm.disk2_interior = mesh_star_region(mesh, poly2, h);

    // Boundary edges with their chain tags.
    for (int i = 0; i < n_x; ++i) {
        mesh.boundary_edges.push_back({idx(i, 0), idx(i + 1, 0), BoundaryTag::TubeMinus});
        mesh.boundary_edges.push_back({idx(i, n_y), idx(i + 1, n_y), BoundaryTag::TubePlus});
    }
    {
        std::vector<int> d1_path;
        d1_path.push_back(idx(0, n_y)); // a_top
        d1_path.insert(d1_path.end(), arc1_idx.begin(), arc1_idx.end());
        d1_path.push_back(idx(0, 0)); // a_bot
        for (std::size_t k = 0; k + 1 < d1_path.size(); ++k)
            mesh.boundary_edges.push_back({d1_path[k], d1_path[k + 1], BoundaryTag::D1});
        std::vector<int> d2_path;
        d2_path.push_back(idx(n_x, 0)); // b_bot
        d2_path.insert(d2_path.end(), arc2_idx.begin(), arc2_idx.end());
        d2_path.push_back(idx(n_x, n_y)); // b_top
        for (std::size_t k = 0; k + 1 < d2_path.size(); ++k)
            mesh.boundary_edges.push_back({d2_path[k], d2_path[k + 1], BoundaryTag::D2});
    }
    mesh.rebuild_partition();

    for (int t = 0; t < mesh.n_triangles(); ++t)
        if (triangle_area(mesh, t) <= 0.0)
            throw MeshFailure("mesh_dumbbell: inverted triangle " + std::to_string(t));

    for (int i = 0; i <= n_x; ++i) dm.midline.push_back(idx(i, n_y / 2));
    return dm;
}

TriMesh mesh_disk(double radius, double h) {
    if (!(radius > 0.0)) throw InvalidArgument("mesh_disk: radius must be positive");
    if (!(h > 0.0) || h >= radius) throw InvalidArgument("mesh_disk: require 0 < h < radius");

    const int n_r = std::max(1, int(std::lround(radius / h)));
    TriMesh mesh;
    mesh.nodes.push_back({0.0, 0.0});
    std::vector<std::vector<int>> rings(n_r + 1);
    for (int j = 1; j <= n_r; ++j) {
        const int count = 6 * j;
        rings[j].resize(count);
        for (int k = 0; k < count; ++k) {
            rings[j][k] = mesh.n_nodes();
            const double phi = 2.0 * M_PI * k / count;
            const double rj = double(j) / n_r;
            mesh.nodes.push_back({radius * (rj * std::cos(phi)), radius * (rj * std::sin(phi))});
        }
    }
    for (int k = 0; k < 6; ++k)
        mesh.triangles.push_back({0, rings[1][k], rings[1][(k + 1) % 6]});
    for (int j = 1; j < n_r; ++j) {
        const int ni = 6 * j, no = 6 * (j + 1);
        for (int s = 0; s < 6; ++s) {
            for (int t = 0; t <= j; ++t) {
                const int o0 = rings[j + 1][(s * (j + 1) + t) % no];
                const int o1 = rings[j + 1][(s * (j + 1) + t + 1) % no];
                const int i0 = rings[j][(s * j + t) % ni];
                mesh.triangles.push_back({o0, o1, i0});
                if (t < j) {
                    const int i1 = rings[j][(s * j + t + 1) % ni];
                    mesh.triangles.push_back({i0, o1, i1});
                }
            }
        }
    }
    const auto& outer = rings[n_r];
    for (std::size_t k = 0; k < outer.size(); ++k)
        mesh.boundary_edges.push_back(
            {outer[k], outer[(k + 1) % outer.size()], BoundaryTag::D1});
    mesh.rebuild_partition();
    return mesh;
}

TriMesh mesh_rect(double width, double height, int nx, int ny) {
    if (!(width > 0.0) || !(height > 0.0) || nx < 1 || ny < 1)
        throw InvalidArgument("mesh_rect: bad dimensions");
    TriMesh mesh;
    auto idx = [ny](int i, int j) { return i * (ny + 1) + j; };
    for (int i = 0; i <= nx; ++i)
        for (int j = 0; j <= ny; ++j)
            mesh.nodes.push_back({lerp01(0.0, width, double(i) / nx),
                                  lerp01(0.0, height, double(j) / ny)});
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            mesh.triangles.push_back({idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)});
            mesh.triangles.push_back({idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)});
        }
    for (int i = 0; i < nx; ++i) {
        mesh.boundary_edges.push_back({idx(i, 0), idx(i + 1, 0), BoundaryTag::D1});
        mesh.boundary_edges.push_back({idx(i + 1, ny), idx(i, ny), BoundaryTag::D1});
    }
    for (int j = 0; j < ny; ++j) {
        mesh.boundary_edges.push_back({idx(nx, j), idx(nx, j + 1), BoundaryTag::D1});
        mesh.boundary_edges.push_back({idx(0, j + 1), idx(0, j), BoundaryTag::D1});
    }
    mesh.rebuild_partition();
    return mesh;
}

MeshQuality mesh_quality(const TriMesh& mesh) {
    MeshQuality q;
    q.n_nodes = mesh.n_nodes();
    q.n_tris = mesh.n_triangles();
    q.min_angle = 180.0;
    q.max_aspect = 1.0;
    for (const auto& tri : mesh.triangles) {
        const Vec2 a = mesh.nodes[tri[0]], b = mesh.nodes[tri[1]], c = mesh.nodes[tri[2]];
        const double ea = norm(c - b), eb = norm(a - c), ec = norm(b - a);
        const double lo = std::min({ea, eb, ec}), hi = std::max({ea, eb, ec});
        q.max_aspect = std::max(q.max_aspect, hi / lo);
        const auto angle = [](double opp, double s1, double s2) {
            const double v = std::clamp((s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2), -1.0, 1.0);
            return std::acos(v) * 180.0 / M_PI;
        };
        q.min_angle = std::min({q.min_angle, angle(ea, eb, ec), angle(eb, ec, ea), angle(ec, ea, eb)});
    }
    return q;
}

int count_edges(const TriMesh& mesh) {
    std::set<std::pair<int, int>> edges;
    for (const auto& tri : mesh.triangles)
        for (int e = 0; e < 3; ++e) {
            int a = tri[e], b = tri[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            edges.insert({a, b});
        }
    return int(edges.size());
}

void validate_mesh(const TriMesh& mesh) {
    for (int t = 0; t < mesh.n_triangles(); ++t)
        if (triangle_area(mesh, t) <= 0.0)
            throw MeshFailure("triangle " + std::to_string(t) + " has non-positive area");

    std::map<std::pair<int, int>, int> incidence;
    for (const auto& tri : mesh.triangles)
        for (int e = 0; e < 3; ++e) {
            int a = tri[e], b = tri[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            ++incidence[{a, b}];
        }
    std::set<std::pair<int, int>> boundary;
    for (const auto& e : mesh.boundary_edges) {
        int a = e.a, b = e.b;
        if (a > b) std::swap(a, b);
        if (!boundary.insert({a, b}).second)
            throw MeshFailure("duplicate boundary edge");
    }
    for (const auto& [edge, count] : incidence) {
        const bool is_boundary = boundary.count(edge) > 0;
        if (is_boundary && count != 1)
            throw MeshFailure("boundary edge shared by " + std::to_string(count) + " triangles");
        if (!is_boundary && count != 2)
            throw MeshFailure("interior edge in " + std::to_string(count) + " triangles");
    }
    for (const auto& edge : boundary)
        if (!incidence.count(edge)) throw MeshFailure("boundary edge not in any triangle");

    std::set<int> bnodes(mesh.boundary_nodes.begin(), mesh.boundary_nodes.end());
    std::set<int> expect;
    for (const auto& e : mesh.boundary_edges) {
        expect.insert(e.a);
        expect.insert(e.b);
    }
    if (bnodes != expect) throw MeshFailure("boundary node set does not match boundary edges");
    if (int(mesh.boundary_nodes.size() + mesh.interior_nodes.size()) != mesh.n_nodes())
        throw MeshFailure("node partition is not exact");
    for (int i : mesh.interior_nodes)
        if (bnodes.count(i)) throw MeshFailure("node partition overlaps");
}

std::string mesh_to_json(const TriMesh& mesh) {
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    for (const auto& p : mesh.nodes) j["nodes"].push_back({p.x, p.y});
    j["triangles"] = nlohmann::json::array();
    for (const auto& t : mesh.triangles) j["triangles"].push_back({t[0], t[1], t[2]});
    j["boundary_edges"] = nlohmann::json::array();
    for (const auto& e : mesh.boundary_edges)
        j["boundary_edges"].push_back({{"i", e.a}, {"j", e.b}, {"tag", to_string(e.tag)}});
    return j.dump();
}

TriMesh mesh_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    TriMesh mesh;
    for (const auto& p : j.at("nodes")) mesh.nodes.push_back({p.at(0), p.at(1)});
    for (const auto& t : j.at("triangles"))
        mesh.triangles.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    for (const auto& e : j.at("boundary_edges"))
        mesh.boundary_edges.push_back({e.at("i").get<int>(), e.at("j").get<int>(),
                                       tag_from_string(e.at("tag").get<std::string>())});
    mesh.rebuild_partition();
    return mesh;
}

} // namespace steklov
