#include <doctest.h>

#include "steklov/counterexample.hpp"
#include "steklov/errors.hpp"

#include <cmath>

using namespace steklov;

TEST_CASE("check_limit_inequality at L = 12: threshold, root, chain") {
    const CounterexampleReport rep = check_limit_inequality(12.0);
    CHECK(rep.threshold ==
          doctest::Approx(0.75 * (std::sqrt(2.0) + 1.0) * std::pow(M_PI, 1.5)).epsilon(1e-15));
    CHECK(rep.threshold == doctest::Approx(10.0823).epsilon(1e-4));
    CHECK(rep.above_threshold);
    CHECK(rep.alpha1 == doctest::Approx(0.0414).epsilon(1e-2));
    CHECK(rep.lower_alpha == doctest::Approx(9.0 * M_PI * M_PI / (16.0 * 144.0)).epsilon(1e-14));
    CHECK(rep.bound_mu ==
          doctest::Approx(4.0 / ((2.0 * std::sqrt(M_PI) + 12.0) * 12.0)).epsilon(1e-14));
    CHECK(rep.lower_alpha == doctest::Approx(0.03855).epsilon(1e-3));
    CHECK(rep.bound_mu == doctest::Approx(0.02144).epsilon(1e-3));
    CHECK(rep.f_samples == 1000);
    CHECK(rep.f_all_positive);
    CHECK(rep.alpha_ge_lower);
    CHECK(rep.lower_gt_bound);
    CHECK(rep.chain_holds);
}

TEST_CASE("check_limit_inequality below the threshold records the failure") {
    const CounterexampleReport rep = check_limit_inequality(1.0);
    CHECK_FALSE(rep.above_threshold);
    CHECK_FALSE(rep.f_all_positive); // first root sits inside (0, 3pi/4L)
    CHECK_FALSE(rep.chain_holds);    // no claim below the threshold
    CHECK(rep.f_positive_count < rep.f_samples);
    CHECK(rep.f_positive_count > 0);
}

TEST_CASE("bound_mu decreases strictly in L") {
    double prev = 1e300;
    for (double L : {2.0, 4.0, 8.0, 12.0, 20.0}) {
        const CounterexampleReport rep = check_limit_inequality(L, 10);
        CHECK(rep.bound_mu < prev);
        prev = rep.bound_mu;
    }
}

TEST_CASE("check_limit_inequality rejects bad input") {
    CHECK_THROWS_AS(check_limit_inequality(0.0), InvalidArgument);
    CHECK_THROWS_AS(check_limit_inequality(-2.0), InvalidArgument);
}

TEST_CASE("FEM probe at L = 12: reversed inequality at eps = 0.05") {
    const InequalityRecord probe = check_fem_inequality(12.0, 0.05, 0.15);

    // Verdict comes from the recomputed sides.
    CHECK(probe.lhs() == doctest::Approx(probe.mu1 * probe.area));
    CHECK(probe.rhs() == doctest::Approx(probe.sigma1 * probe.perimeter));
    CHECK(probe.verdict());

    // Paper-level sanity: mu_1 <= 1.2 (4/L) eps and sigma_1/eps near alpha_1.
    const CounterexampleReport limit = check_limit_inequality(12.0, 10);
    CHECK(probe.mu1 <= 1.2 * (4.0 / 12.0) * 0.05);
    CHECK(probe.sigma1 / 0.05 == doctest::Approx(limit.alpha1).epsilon(0.25));

    // Geometry bookkeeping is mesh-measured.
    CHECK(probe.area == doctest::Approx(2.0 + 2.0 * 0.05 * 12.0).epsilon(0.01));
    CHECK(probe.perimeter ==
          doctest::Approx(2.0 * 2.0 * std::sqrt(M_PI) + 2.0 * 12.0).epsilon(0.01));
}

TEST_CASE("report JSON round-trip recomputes the verdict from the numbers") {
    CounterexampleReport rep = check_limit_inequality(12.0, 10);
    InequalityRecord rec;
    rec.eps = 0.05;
    rec.h = 0.15;
    rec.mu1 = 0.016;
    rec.sigma1 = 0.002;
    rec.area = 3.2;
    rec.perimeter = 31.0;
    rep.fem.push_back(rec);
    REQUIRE(rep.fem[0].verdict());

    const std::string text = counterexample_to_json(rep);
    CHECK(text.find("\"verdict\": true") != std::string::npos);

    // Flip a stored number in the serialized form; the verdict must follow
    // the numbers on re-import, not any cached flag.
    std::string tampered = text;
    const std::string needle = "\"mu1\": 0.016";
    const auto pos = tampered.find(needle);
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, needle.size(), "\"mu1\": 1.0");
    const CounterexampleReport back = counterexample_from_json(tampered);
    CHECK_FALSE(back.fem[0].verdict());

    const CounterexampleReport same = counterexample_from_json(text);
    CHECK(same.fem[0].verdict());
    CHECK(same.alpha1 == doctest::Approx(rep.alpha1).epsilon(1e-15));
    CHECK(same.first_true_record() == 0);
}

TEST_CASE("run_counterexample retains every probe and flags the first reversal") {
    // Short dumbbell: the fat tube keeps the classical direction at
    // eps = 0.3 and the reversal appears at eps = 0.2.
    const CounterexampleReport rep = run_counterexample(2.0, {0.3, 0.2}, 0.1);
    REQUIRE(rep.fem.size() == 2);
    CHECK_FALSE(rep.fem[0].verdict());
    CHECK(rep.fem[1].verdict());
    CHECK(rep.first_true_record() == 1);
    const std::string summary = counterexample_summary(rep);
    CHECK(summary.find("first reversed record") != std::string::npos);
    CHECK(summary.find("counterexample") != std::string::npos);
}
