#include "steklov/geometry.hpp"

#include "steklov/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace steklov {

double norm(Vec2 a) { return std::hypot(a.x, a.y); }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

std::string to_string(BoundaryTag tag) {
    switch (tag) {
    case BoundaryTag::D1: return "D1";
    case BoundaryTag::D2: return "D2";
    case BoundaryTag::TubePlus: return "TubePlus";
    case BoundaryTag::TubeMinus: return "TubeMinus";
    }
    return "?";
}

BoundaryTag tag_from_string(const std::string& s) {
    if (s == "D1") return BoundaryTag::D1;
    if (s == "D2") return BoundaryTag::D2;
    if (s == "TubePlus") return BoundaryTag::TubePlus;
    if (s == "TubeMinus") return BoundaryTag::TubeMinus;
    throw InvalidArgument("unknown boundary tag: " + s);
}

void DumbbellSpec::validate() const {
    if (!(L > 0.0) || !(r1 > 0.0) || !(r2 > 0.0) || !(eps > 0.0))
        throw InvalidSpec("require L, r1, r2, eps > 0");
    if (n_arc < 16) throw InvalidSpec("n_arc must be >= 16");
    if (dim < 2) throw InvalidSpec("dim must be >= 2");
    if (std::isfinite(profile.half_length()) && profile.half_length() < L / 2.0 * (1.0 - 1e-12))
        throw InvalidSpec("profile domain does not cover [-L/2, L/2]");
    profile.require_positive(L / 2.0);
    const double w_max = eps * profile.max_on(L / 2.0);
    if (w_max >= std::min(r1, r2))
        throw InvalidSpec("tube too wide: eps*max(rho) >= min(r1, r2)");
}

const Chain& DumbbellGeometry::chain(BoundaryTag tag) const {
    for (const auto& c : chains)
        if (c.tag == tag) return c;
    throw InvalidArgument("geometry has no chain tagged " + to_string(tag));
}

namespace {

double lerp01(double a, double b, double t) { return (1.0 - t) * a + t * b; }

// Arc of the circle (center, radius) from angle0 to angle1 (CCW, angle1 >
// angle0), polygonized with n segments. Endpoints are replaced afterwards.
std::vector<Vec2> arc_points(Vec2 center, double radius, double angle0, double angle1, int n) {
    std::vector<Vec2> pts;
    pts.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double phi = lerp01(angle0, angle1, double(i) / n);
        pts.push_back({center.x + radius * std::cos(phi), center.y + radius * std::sin(phi)});
    }
    return pts;
}

} // namespace

DumbbellGeometry make_dumbbell(const DumbbellSpec& spec) {
    spec.validate();
    const double L = spec.L, eps = spec.eps;
    const int n_tube = spec.tube_intervals();

    const double w1 = eps * spec.profile(-L / 2.0);
    const double w2 = eps * spec.profile(L / 2.0);
    const double d1 = std::sqrt(spec.r1 * spec.r1 - w1 * w1);
    const double d2 = std::sqrt(spec.r2 * spec.r2 - w2 * w2);
    const Vec2 c1{-L / 2.0 - d1, 0.0};
    const Vec2 c2{L / 2.0 + d2, 0.0};

    const Vec2 a_bot{-L / 2.0, -w1}, a_top{-L / 2.0, w1};
    const Vec2 b_bot{L / 2.0, -w2}, b_top{L / 2.0, w2};

    // Tube side polylines sample x2 = +/- eps*rho(x1), left to right.
    std::vector<Vec2> bot(n_tube + 1), top(n_tube + 1);
    for (int i = 0; i <= n_tube; ++i) {
        const double x = lerp01(-L / 2.0, L / 2.0, double(i) / n_tube);
        const double w = eps * spec.profile(x);
        bot[i] = {x, -w};
        top[i] = {x, w};
    }
    bot.front() = a_bot;
    bot.back() = b_bot;
    top.front() = a_top;
    top.back() = b_top;

    // Disk arcs: half-angle of the removed cap seen from each center.
    const double theta1 = std::atan2(w1, d1);
    const double theta2 = std::atan2(w2, d2);

    // D2: CCW from b_bot (angle theta2 - pi) through 0 to b_top (pi - theta2).
    std::vector<Vec2> arc2 = arc_points(c2, spec.r2, theta2 - M_PI, M_PI - theta2, spec.n_arc);
    arc2.front() = b_bot;
    arc2.back() = b_top;

    // D1: CCW from a_top (angle theta1) over the top to a_bot (2 pi - theta1).
    std::vector<Vec2> arc1 = arc_points(c1, spec.r1, theta1, 2.0 * M_PI - theta1, spec.n_arc);
    arc1.front() = a_top;
    arc1.back() = a_bot;

    DumbbellGeometry geom;
    geom.spec = spec;
    geom.junction_nodes = {a_bot, a_top, b_bot, b_top};
    geom.chains.push_back({BoundaryTag::TubeMinus, std::move(bot)});
    geom.chains.push_back({BoundaryTag::D2, std::move(arc2)});
    std::reverse(top.begin(), top.end()); // TubePlus runs right to left
    geom.chains.push_back({BoundaryTag::TubePlus, std::move(top)});
    geom.chains.push_back({BoundaryTag::D1, std::move(arc1)});
    return geom;
}

DumbbellGeometry resample_tube(const DumbbellGeometry& geom, int n_intervals) {
    DumbbellSpec spec = geom.spec;
    spec.n_tube = n_intervals;
    return make_dumbbell(spec);
}

double polyline_length(const std::vector<Vec2>& pts) {
    double len = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) len += norm(pts[i] - pts[i - 1]);
    return len;
}

double perimeter(const DumbbellGeometry& geom, BoundaryTag tag) {
    double len = 0.0;
    for (const auto& c : geom.chains)
        if (c.tag == tag) len += polyline_length(c.points);
    return len;
}

double perimeter(const DumbbellGeometry& geom) {
    // Same partition (and summation order) as the per-tag totals, so
    // perimeter(All) == sum over tags holds exactly.
    return perimeter(geom, BoundaryTag::D1) + perimeter(geom, BoundaryTag::D2) +
           perimeter(geom, BoundaryTag::TubePlus) + perimeter(geom, BoundaryTag::TubeMinus);
}

std::vector<Vec2> boundary_loop(const DumbbellGeometry& geom) {
    std::vector<Vec2> loop;
    for (const auto& c : geom.chains)
        loop.insert(loop.end(), c.points.begin(), c.points.end() - 1);
    return loop;
}

double polygon_area(const std::vector<Vec2>& loop) {
    double twice = 0.0;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = loop[i];
        const Vec2& q = loop[(i + 1) % n];
        twice += cross(p, q);
    }
    return 0.5 * twice;
}

namespace {

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
    const auto orient = [](Vec2 a, Vec2 b, Vec2 c) {
        const double v = cross(b - a, c - a);
        const double scale = norm(b - a) * norm(c - a);
        if (std::abs(v) <= 1e-14 * scale) return 0;
        return v > 0 ? 1 : -1;
    };
    const int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
    const int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
    if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
    return false;
}

} // namespace

bool polygon_is_simple(const std::vector<Vec2>& loop) {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p1 = loop[i], p2 = loop[(i + 1) % n];
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue; // adjacent through the wrap
            const Vec2 q1 = loop[j], q2 = loop[(j + 1) % n];
            if (segments_intersect(p1, p2, q1, q2)) return false;
        }
    }
    return true;
}

double area(const DumbbellGeometry& geom) {
    const std::vector<Vec2> loop = boundary_loop(geom);
    if (!polygon_is_simple(loop))
        throw NonSimpleBoundary("boundary loop self-intersects");
    const double a = polygon_area(loop);
    if (a <= 0.0) throw NonSimpleBoundary("boundary loop is not counterclockwise");
    return a;
}

std::string geometry_to_json(const DumbbellGeometry& geom) {
    nlohmann::json j;
    j["chains"] = nlohmann::json::array();
    for (const auto& c : geom.chains) {
        nlohmann::json jc;
        jc["tag"] = to_string(c.tag);
        jc["points"] = nlohmann::json::array();
        for (const auto& p : c.points) jc["points"].push_back({p.x, p.y});
        j["chains"].push_back(std::move(jc));
    }
    return j.dump(2);
}

} // namespace steklov
