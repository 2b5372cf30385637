#pragma once

#include "steklov/geometry.hpp"

#include <array>
#include <string>
#include <vector>

namespace steklov {

struct BoundaryEdge {
    int a = 0, b = 0;
    BoundaryTag tag = BoundaryTag::D1;
};

/// Conforming P1 triangle mesh. Triangles are counterclockwise; every
/// boundary edge belongs to exactly one triangle and carries the tag of the
/// geometry chain it lies on.
struct TriMesh {
    std::vector<Vec2> nodes;
    std::vector<std::array<int, 3>> triangles;
    std::vector<BoundaryEdge> boundary_edges;
    std::vector<int> boundary_nodes;
    std::vector<int> interior_nodes;

    int n_nodes() const { return int(nodes.size()); }
    int n_triangles() const { return int(triangles.size()); }

    /// Recompute the boundary/interior node partition from boundary_edges.
    void rebuild_partition();
};

struct MeshQuality {
    double min_angle = 0.0; // degrees
    double max_aspect = 1.0; // longest edge / shortest edge
    int n_nodes = 0;
    int n_tris = 0;
};

/// Dumbbell mesh plus the bookkeeping the asymptotics pipeline needs: the
/// polygon actually triangulated, the tube grid dimensions, the midline node
/// row and the strictly-interior node sets of the two disk regions.
struct DumbbellMesh {
    TriMesh tri;
    DumbbellGeometry geom;
    int n_x = 0, n_y = 0;
    std::vector<int> midline;       // nodes on x2 = 0, left to right
    std::vector<int> disk1_interior;
    std::vector<int> disk2_interior;
};

/// Structured anisotropic grid on the tube (n_x = ceil(L/h) columns, n_y
/// cross layers), radial star mesh on each disk region, stitched at the
/// shared junction columns. The tube boundary is re-sampled at the grid
/// stations, so the triangulated polygon equals resample_tube(geom, n_x).
DumbbellMesh mesh_dumbbell(const DumbbellGeometry& geom, double h, int n_y = 4);

/// Full disk of the given radius, concentric rings with 6j nodes on ring j.
/// Boundary tagged D1. Node coordinates scale exactly with radius for a
/// fixed h/radius ratio.
TriMesh mesh_disk(double radius, double h);

/// Axis-aligned rectangle fixture [0,w] x [0,h_rect], nx-by-ny grid,
/// boundary tagged D1.
TriMesh mesh_rect(double width, double height, int nx, int ny);

MeshQuality mesh_quality(const TriMesh& mesh);

double triangle_area(const TriMesh& mesh, int t);
double mesh_area(const TriMesh& mesh);

/// Conformity checks: positive areas, each boundary edge in exactly one
/// triangle, interior edges in exactly two, exact node partition.
/// Throws MeshFailure on violation.
void validate_mesh(const TriMesh& mesh);

/// Number of distinct edges (for Euler checks).
int count_edges(const TriMesh& mesh);

std::string mesh_to_json(const TriMesh& mesh);
TriMesh mesh_from_json(const std::string& text);

} // namespace steklov
