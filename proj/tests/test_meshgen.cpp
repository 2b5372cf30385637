#include <doctest.h>

#include "steklov/errors.hpp"
#include "steklov/geometry.hpp"
#include "steklov/meshgen.hpp"

#include <cmath>
#include <set>

using namespace steklov;

namespace {

DumbbellSpec figure_spec(double r, double L, double eps, int n_arc = 48) {
    DumbbellSpec s;
    s.r1 = s.r2 = r;
    s.L = L;
    s.eps = eps;
    s.profile = TubeProfile::constant(1.0);
    s.n_arc = n_arc;
    return s;
}

void check_euler_disk_topology(const TriMesh& mesh) {
    const int v = mesh.n_nodes();
    const int e = count_edges(mesh);
    const int f = mesh.n_triangles();
    CHECK(v - e + f == 1);
}

} // namespace

TEST_CASE("mesh_dumbbell: tube block counts and conformity") {
    const DumbbellGeometry geom = make_dumbbell(figure_spec(1.0 / std::sqrt(M_PI), 12.0, 0.1));
    const DumbbellMesh dm = mesh_dumbbell(geom, 0.2, 4);
    CHECK(dm.n_x == 60);
    CHECK(dm.n_y == 4);
    // 60 x 4 quads split in two = 480 tube triangles, laid out first.
    int tube_tris = 0;
    for (int t = 0; t < dm.tri.n_triangles(); ++t) {
        const auto& tri = dm.tri.triangles[t];
        const bool in_tube = tri[0] < 61 * 5 && tri[1] < 61 * 5 && tri[2] < 61 * 5;
        if (in_tube) ++tube_tris;
    }
    CHECK(tube_tris == 480);
    validate_mesh(dm.tri);
    check_euler_disk_topology(dm.tri);
}

TEST_CASE("mesh_dumbbell with a cosine-bump profile covers the same polygon") {
    DumbbellSpec spec = figure_spec(1.0, 4.0, 0.2);
    spec.profile = TubeProfile::cosine_bump(1.0, 0.4, spec.L);
    spec.n_tube = 40; // matches ceil(L/h) below so geometry == meshed polygon
    const DumbbellGeometry geom = make_dumbbell(spec);
    const DumbbellMesh dm = mesh_dumbbell(geom, 0.1, 4);
    CHECK(dm.n_x == 40);
    for (int t = 0; t < dm.tri.n_triangles(); ++t) CHECK(triangle_area(dm.tri, t) > 0.0);
    CHECK(mesh_area(dm.tri) == doctest::Approx(area(geom)).epsilon(1e-13));
    validate_mesh(dm.tri);
}

TEST_CASE("mesh_dumbbell boundary tags partition the geometry perimeter") {
    const DumbbellGeometry geom = make_dumbbell(figure_spec(1.0 / std::sqrt(M_PI), 4.0, 0.1));
    const DumbbellMesh dm = mesh_dumbbell(geom, 1.0 / 15.0, 4);
    double by_tag[4] = {0, 0, 0, 0};
    for (const auto& e : dm.tri.boundary_edges)
        by_tag[int(e.tag)] += norm(dm.tri.nodes[e.b] - dm.tri.nodes[e.a]);
    // dm.geom is the tube-resampled polygon the mesh triangulated.
    CHECK(by_tag[int(BoundaryTag::D1)] ==
          doctest::Approx(perimeter(dm.geom, BoundaryTag::D1)).epsilon(1e-13));
    CHECK(by_tag[int(BoundaryTag::TubePlus)] ==
          doctest::Approx(perimeter(dm.geom, BoundaryTag::TubePlus)).epsilon(1e-13));
    const double total = by_tag[0] + by_tag[1] + by_tag[2] + by_tag[3];
    CHECK(total == doctest::Approx(perimeter(dm.geom)).epsilon(1e-13));
}

TEST_CASE("mesh_dumbbell junction nodes coincide with the disk faces") {
    const DumbbellGeometry geom = make_dumbbell(figure_spec(1.0, 4.0, 0.25));
    const DumbbellMesh dm = mesh_dumbbell(geom, 0.1, 4);
    // Junction values are bit-identical with the geometry chain endpoints.
    const auto& a_bot = dm.geom.junction_nodes[0];
    const auto& a_top = dm.geom.junction_nodes[1];
    CHECK(dm.tri.nodes[0].x == a_bot.x);
    CHECK(dm.tri.nodes[0].y == a_bot.y);
    CHECK(dm.tri.nodes[dm.n_y].x == a_top.x);
    CHECK(dm.tri.nodes[dm.n_y].y == a_top.y);
    // Midline row sits at x2 = 0 exactly.
    for (int i : dm.midline) CHECK(dm.tri.nodes[i].y == 0.0);
}

TEST_CASE("mesh_dumbbell rejects bad arguments") {
    const DumbbellGeometry geom = make_dumbbell(figure_spec(1.0, 4.0, 0.2));
    CHECK_THROWS_AS(mesh_dumbbell(geom, -0.1, 4), InvalidArgument);
    CHECK_THROWS_AS(mesh_dumbbell(geom, 0.1, 3), InvalidArgument);
}

TEST_CASE("mesh_disk: quality, Euler identity, exact dilation") {
    const TriMesh fine = mesh_disk(1.0, 0.05);
    const MeshQuality q = mesh_quality(fine);
    CHECK(q.min_angle >= 20.0);
    validate_mesh(fine);
    check_euler_disk_topology(fine);

    const TriMesh coarse = mesh_disk(1.0, 0.5);
    validate_mesh(coarse);
    check_euler_disk_topology(coarse);

    // Same h/radius ratio: node coordinates scale exactly by 2.
    const TriMesh doubled = mesh_disk(2.0, 0.1);
    REQUIRE(doubled.n_nodes() == fine.n_nodes());
    for (int i = 0; i < fine.n_nodes(); ++i) {
        CHECK(doubled.nodes[i].x == 2.0 * fine.nodes[i].x);
        CHECK(doubled.nodes[i].y == 2.0 * fine.nodes[i].y);
    }
    CHECK_THROWS_AS(mesh_disk(1.0, 2.0), InvalidArgument);
}

TEST_CASE("mesh_quality: equilateral and right isoceles fixtures") {
    TriMesh eq;
    eq.nodes = {{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
    eq.triangles = {{0, 1, 2}};
    eq.boundary_edges = {{0, 1, BoundaryTag::D1}, {1, 2, BoundaryTag::D1}, {2, 0, BoundaryTag::D1}};
    eq.rebuild_partition();
    CHECK(mesh_quality(eq).min_angle == doctest::Approx(60.0));

    TriMesh iso;
    iso.nodes = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    iso.triangles = {{0, 1, 2}};
    iso.boundary_edges = {{0, 1, BoundaryTag::D1}, {1, 2, BoundaryTag::D1}, {2, 0, BoundaryTag::D1}};
    iso.rebuild_partition();
    CHECK(mesh_quality(iso).min_angle == doctest::Approx(45.0));
}

TEST_CASE("tube anisotropy shows up in max_aspect as expected") {
    const DumbbellGeometry geom = make_dumbbell(figure_spec(1.0, 12.0, 0.05));
    const DumbbellMesh dm = mesh_dumbbell(geom, 0.2, 4);
    // Tube cells are 0.2 x (2*0.05/4); the split triangles have
    // longest/shortest >= 0.2 / 0.025 = 8.
    CHECK(mesh_quality(dm.tri).max_aspect >= 8.0);
}

TEST_CASE("refinement: halving h at least doubles node count, keeps angles") {
    const DumbbellGeometry geom = make_dumbbell(figure_spec(1.0, 4.0, 0.2));
    const DumbbellMesh m1 = mesh_dumbbell(geom, 0.2, 4);
    const DumbbellMesh m2 = mesh_dumbbell(geom, 0.1, 4);
    CHECK(m2.tri.n_nodes() >= 2 * m1.tri.n_nodes());
    CHECK(mesh_quality(m2.tri).min_angle >= mesh_quality(m1.tri).min_angle - 5.0);
}

TEST_CASE("mesh JSON round-trip preserves the mesh") {
    const DumbbellGeometry geom = make_dumbbell(figure_spec(1.0, 4.0, 0.2, 16));
    const DumbbellMesh dm = mesh_dumbbell(geom, 0.5, 2);
    const TriMesh back = mesh_from_json(mesh_to_json(dm.tri));
    REQUIRE(back.n_nodes() == dm.tri.n_nodes());
    REQUIRE(back.n_triangles() == dm.tri.n_triangles());
    CHECK(back.boundary_edges.size() == dm.tri.boundary_edges.size());
    CHECK(mesh_area(back) == doctest::Approx(mesh_area(dm.tri)).epsilon(1e-15));
    validate_mesh(back);
}

TEST_CASE("mesh_rect: unit square fixture") {
    const TriMesh sq = mesh_rect(1.0, 1.0, 10, 10);
    validate_mesh(sq);
    check_euler_disk_topology(sq);
    CHECK(mesh_area(sq) == doctest::Approx(1.0).epsilon(1e-14));
    double perim = 0.0;
    for (const auto& e : sq.boundary_edges) perim += norm(sq.nodes[e.b] - sq.nodes[e.a]);
    CHECK(perim == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("validate_mesh detects broken meshes") {
    TriMesh bad;
    bad.nodes = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    bad.triangles = {{0, 2, 1}}; // clockwise: negative area
    bad.boundary_edges = {{0, 1, BoundaryTag::D1}, {1, 2, BoundaryTag::D1}, {2, 0, BoundaryTag::D1}};
    bad.rebuild_partition();
    CHECK_THROWS_AS(validate_mesh(bad), MeshFailure);
}
