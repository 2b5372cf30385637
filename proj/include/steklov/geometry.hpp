#pragma once

#include "steklov/profile.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace steklov {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
double norm(Vec2 a);
double cross(Vec2 a, Vec2 b);

enum class BoundaryTag { D1, D2, TubePlus, TubeMinus };

std::string to_string(BoundaryTag tag);
BoundaryTag tag_from_string(const std::string& s);

/// Parametric description of the dumbbell family: two disks of radii r1, r2
/// joined by a tube of length L and half-width eps * rho(x1).
struct DumbbellSpec {
    double r1 = 1.0;
    double r2 = 1.0;
    double L = 4.0;
    TubeProfile profile = TubeProfile::constant(1.0);
    double eps = 0.1;
    int n_arc = 64;  // polygonization segments per disk arc, >= 16
    int dim = 2;     // ambient dimension; >2 only routes to the 1D limit path
    int n_tube = 0;  // tube polyline intervals; 0 picks max(64, 2*n_arc)

    int tube_intervals() const { return n_tube > 0 ? n_tube : std::max(64, 2 * n_arc); }
    void validate() const; // throws InvalidSpec / DegenerateProfile
};

/// One tagged polyline of the realized boundary. Consecutive chains share
/// their junction endpoints, and together they form one closed CCW loop.
struct Chain {
    BoundaryTag tag;
    std::vector<Vec2> points;
};

struct DumbbellGeometry {
    // Chain order around the loop: TubeMinus, D2, TubePlus, D1.
    std::vector<Chain> chains;
    // a_bot, a_top at x1 = -L/2; b_bot, b_top at x1 = +L/2.
    std::array<Vec2, 4> junction_nodes;
    DumbbellSpec spec; // retained so meshing can resample the tube

    const Chain& chain(BoundaryTag tag) const;
};

/// Realize the spec as a tagged polygon. The disks are cut by a vertical
/// chord at x1 = -/+ L/2 of half-width eps*rho there, so the tube attaches
/// flush and the junction nodes are shared by tube and disk chains.
DumbbellGeometry make_dumbbell(const DumbbellSpec& spec);

/// Same dumbbell with the tube polylines re-sampled at n_intervals stations
/// (the disk arcs are untouched). Meshing uses this to align its grid.
DumbbellGeometry resample_tube(const DumbbellGeometry& geom, int n_intervals);

/// Sum of segment lengths of the chains with the given tag.
double perimeter(const DumbbellGeometry& geom, BoundaryTag tag);
/// Total boundary length P(Omega_eps).
double perimeter(const DumbbellGeometry& geom);

/// Shoelace area of the closed loop. Throws NonSimpleBoundary on
/// self-intersection.
double area(const DumbbellGeometry& geom);

/// Closed loop as a single point list (chain endpoints deduplicated).
std::vector<Vec2> boundary_loop(const DumbbellGeometry& geom);

/// Polygon helpers shared with tests and meshing.
double polygon_area(const std::vector<Vec2>& loop);
double polyline_length(const std::vector<Vec2>& pts);
bool polygon_is_simple(const std::vector<Vec2>& loop);

/// JSON export: {"chains":[{"tag":...,"points":[[x,y],...]}]}.
std::string geometry_to_json(const DumbbellGeometry& geom);

} // namespace steklov
