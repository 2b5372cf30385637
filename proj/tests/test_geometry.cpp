#include <doctest.h>

#include "steklov/errors.hpp"
#include "steklov/geometry.hpp"

#include <cmath>
#include <random>

using namespace steklov;

namespace {

DumbbellSpec figure_spec(double r, double L, double eps, int n_arc = 64) {
    DumbbellSpec s;
    s.r1 = s.r2 = r;
    s.L = L;
    s.eps = eps;
    s.profile = TubeProfile::constant(1.0);
    s.n_arc = n_arc;
    return s;
}

// Kept arc length of a disk with one circular cap removed: the flat face has
// half-width w, so the cap spans half-angle asin(w/r) on each side.
double analytic_arc_length(double r, double w) {
    return 2.0 * r * (M_PI - std::asin(w / r));
}

// Area of the removed circular segment between chord and arc.
double analytic_cap_area(double r, double w) {
    const double theta = std::asin(w / r);
    const double d = std::sqrt(r * r - w * w);
    return r * r * theta - w * d;
}

} // namespace

TEST_CASE("profile_eval: constant, cosine bump, table") {
    const TubeProfile c = TubeProfile::constant(1.0);
    CHECK(c(0.3) == 1.0);

    const double L = 2.0;
    const TubeProfile bump = TubeProfile::cosine_bump(1.0, 0.5, L);
    CHECK(bump(0.0) == doctest::Approx(1.5));
    CHECK(bump(L / 2.0) == doctest::Approx(1.0 + 0.5 * std::cos(M_PI / 2.0)));

    const TubeProfile tab = TubeProfile::table({{-1.0, 1.0}, {1.0, 2.0}});
    CHECK(tab(0.0) == doctest::Approx(1.5));
    CHECK_THROWS_AS(tab(1.5), OutOfDomain);
}

TEST_CASE("profile positivity is enforced") {
    CHECK_THROWS_AS(TubeProfile::constant(0.0), DegenerateProfile);
    CHECK_THROWS_AS(TubeProfile::cosine_bump(1.0, -1.5, 4.0), DegenerateProfile);
    CHECK_THROWS_AS(TubeProfile::table({{-1.0, 1.0}, {1.0, -0.1}}), DegenerateProfile);
}

TEST_CASE("make_dumbbell: figure fixture produces four tagged chains with flat faces") {
    const DumbbellSpec spec = figure_spec(1.0 / std::sqrt(M_PI), 12.0, 0.1);
    const DumbbellGeometry geom = make_dumbbell(spec);
    CHECK(geom.chains.size() == 4);

    // Flat junction faces of half-width eps*rho = 0.1 at x1 = -/+ L/2.
    const auto& [a_bot, a_top, b_bot, b_top] = geom.junction_nodes;
    CHECK(a_bot.x == -6.0);
    CHECK(a_top.x == -6.0);
    CHECK(a_bot.y == doctest::Approx(-0.1));
    CHECK(a_top.y == doctest::Approx(0.1));
    CHECK(b_bot.x == 6.0);
    CHECK(b_top.y == doctest::Approx(0.1));

    // Closed simple CCW loop.
    const auto loop = boundary_loop(geom);
    CHECK(polygon_is_simple(loop));
    CHECK(polygon_area(loop) > 0.0);

    // Chains share endpoints around the loop.
    for (std::size_t c = 0; c < geom.chains.size(); ++c) {
        const auto& cur = geom.chains[c].points;
        const auto& nxt = geom.chains[(c + 1) % geom.chains.size()].points;
        CHECK(cur.back().x == nxt.front().x);
        CHECK(cur.back().y == nxt.front().y);
    }

    // D1 lies in x <= -L/2, tube signs match the tags.
    for (const auto& p : geom.chain(BoundaryTag::D1).points) CHECK(p.x <= -6.0 + 1e-12);
    for (const auto& p : geom.chain(BoundaryTag::TubePlus).points) CHECK(p.y > 0.0);
    for (const auto& p : geom.chain(BoundaryTag::TubeMinus).points) CHECK(p.y < 0.0);
}

TEST_CASE("make_dumbbell rejects invalid specs") {
    DumbbellSpec spec = figure_spec(1.0, 4.0, 1.0); // eps*max(rho) == r1
    CHECK_THROWS_AS(make_dumbbell(spec), InvalidSpec);
    spec.eps = 0.2;
    spec.n_arc = 8;
    CHECK_THROWS_AS(make_dumbbell(spec), InvalidSpec);
    spec.n_arc = 32;
    spec.L = -1.0;
    CHECK_THROWS_AS(make_dumbbell(spec), InvalidSpec);
}

TEST_CASE("perimeter: unit square fixture, disk cap value, straight tube side") {
    // Hand fixture: a unit square as a single-chain geometry.
    DumbbellGeometry square;
    square.chains.push_back(
        {BoundaryTag::D1,
         {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}}});
    CHECK(perimeter(square) == doctest::Approx(4.0));
    CHECK(polygon_area(boundary_loop(square)) == doctest::Approx(1.0));

    // Disk chain approaches the analytic circle-cap length as n_arc grows.
    const double r = 1.0 / std::sqrt(M_PI);
    const double eps = 0.05;
    const double exact = analytic_arc_length(r, eps);
    double prev_err = 0.0;
    for (int n_arc : {64, 128, 256}) {
        const DumbbellGeometry geom = make_dumbbell(figure_spec(r, 4.0, eps, n_arc));
        const double err = std::abs(perimeter(geom, BoundaryTag::D1) - exact);
        if (n_arc > 64) CHECK(err <= prev_err / 3.0); // second-order polygonization
        prev_err = err;
    }
    const DumbbellGeometry fine = make_dumbbell(figure_spec(r, 4.0, eps, 512));
    CHECK(perimeter(fine, BoundaryTag::D1) == doctest::Approx(exact).epsilon(1e-5));

    // Straight tube side of a constant profile has length exactly L.
    const DumbbellGeometry geom = make_dumbbell(figure_spec(r, 12.0, 0.1));
    CHECK(perimeter(geom, BoundaryTag::TubePlus) == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("perimeter(All) equals the sum over tags exactly") {
    const DumbbellGeometry geom =
        make_dumbbell(figure_spec(1.0 / std::sqrt(M_PI), 4.0, 0.1));
    const double total = perimeter(geom);
    const double parts = perimeter(geom, BoundaryTag::D1) + perimeter(geom, BoundaryTag::D2) +
                         perimeter(geom, BoundaryTag::TubePlus) +
                         perimeter(geom, BoundaryTag::TubeMinus);
    CHECK(total == parts); // same segment set, partitioned
}

TEST_CASE("area: composite analytic oracle and shrinking-tube limit") {
    const double r = 1.0 / std::sqrt(M_PI); // unit-area disks
    const double L = 12.0;
    const double eps = 0.05;
    const DumbbellGeometry geom = make_dumbbell(figure_spec(r, L, eps, 512));
    // Two disks minus caps plus the 2*eps*L rectangle (constant profile).
    const double analytic = 2.0 * (M_PI * r * r - analytic_cap_area(r, eps)) + 2.0 * eps * L;
    CHECK(area(geom) == doctest::Approx(analytic).epsilon(2e-5));

    // eps -> 0: area decreases monotonically toward |D1| + |D2| = 2,
    // the tube rectangle 2 eps L being the dominant excess.
    double prev = area(geom);
    for (double e : {0.02, 0.005, 0.001}) {
        const double a = area(make_dumbbell(figure_spec(r, L, e, 512)));
        CHECK(a > 2.0 * (M_PI * r * r - analytic_cap_area(r, e)) - 1e-12);
        CHECK(a < prev);
        CHECK(a - 2.0 * e * L == doctest::Approx(2.0).epsilon(2e-3));
        prev = a;
    }
}

TEST_CASE("scaling the spec scales perimeter linearly and area quadratically") {
    const DumbbellSpec base = figure_spec(0.75, 3.0, 0.1);
    const DumbbellGeometry g1 = make_dumbbell(base);

    DumbbellSpec doubled = base;
    doubled.r1 *= 2.0;
    doubled.r2 *= 2.0;
    doubled.L *= 2.0;
    doubled.profile = base.profile.scaled(2.0);
    const DumbbellGeometry g2 = make_dumbbell(doubled);
    CHECK(perimeter(g2) == doctest::Approx(2.0 * perimeter(g1)).epsilon(1e-14));
    CHECK(area(g2) == doctest::Approx(4.0 * area(g1)).epsilon(1e-14));

    DumbbellSpec stretched = base;
    const double s = 1.7;
    stretched.r1 *= s;
    stretched.r2 *= s;
    stretched.L *= s;
    stretched.profile = base.profile.scaled(s);
    const DumbbellGeometry g3 = make_dumbbell(stretched);
    CHECK(perimeter(g3) == doctest::Approx(s * perimeter(g1)).epsilon(1e-12));
    CHECK(area(g3) == doctest::Approx(s * s * area(g1)).epsilon(1e-12));
}

TEST_CASE("randomized specs give simple closed loops") {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> radius(0.3, 2.0);
    std::uniform_real_distribution<double> length(0.5, 10.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        DumbbellSpec spec;
        spec.r1 = radius(rng);
        spec.r2 = radius(rng);
        spec.L = length(rng);
        spec.n_arc = 16 + int(unit(rng) * 64);
        const double c0 = 0.5 + unit(rng);
        if (trial % 3 == 0) {
            spec.profile = TubeProfile::cosine_bump(c0, (unit(rng) - 0.4) * c0, spec.L);
        } else {
            spec.profile = TubeProfile::constant(c0);
        }
        const double w_max = spec.profile.max_on(spec.L / 2.0);
        spec.eps = (0.05 + 0.85 * unit(rng)) * std::min(spec.r1, spec.r2) / w_max;
        const DumbbellGeometry geom = make_dumbbell(spec);
        const auto loop = boundary_loop(geom);
        CHECK(polygon_is_simple(loop));
        CHECK(polygon_area(loop) > 0.0);
        CHECK(perimeter(geom) ==
              perimeter(geom, BoundaryTag::D1) + perimeter(geom, BoundaryTag::D2) +
                  perimeter(geom, BoundaryTag::TubePlus) +
                  perimeter(geom, BoundaryTag::TubeMinus));
    }
}

TEST_CASE("geometry JSON export lists the tagged chains") {
    const DumbbellGeometry geom = make_dumbbell(figure_spec(1.0, 4.0, 0.2, 16 + 8));
    const std::string j = geometry_to_json(geom);
    CHECK(j.find("\"TubePlus\"") != std::string::npos);
    CHECK(j.find("\"D2\"") != std::string::npos);
    CHECK(j.find("\"chains\"") != std::string::npos);
}

TEST_CASE("resample_tube keeps the disks and junction nodes") {
    const DumbbellGeometry geom = make_dumbbell(figure_spec(1.0, 4.0, 0.2));
    const DumbbellGeometry fine = resample_tube(geom, 100);
    CHECK(fine.chain(BoundaryTag::TubeMinus).points.size() == 101);
    CHECK(fine.chain(BoundaryTag::D1).points.size() ==
          geom.chain(BoundaryTag::D1).points.size());
    for (int i = 0; i < 4; ++i) {
        CHECK(fine.junction_nodes[i].x == geom.junction_nodes[i].x);
        CHECK(fine.junction_nodes[i].y == geom.junction_nodes[i].y);
    }
}
