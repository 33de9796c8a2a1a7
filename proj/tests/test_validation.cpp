#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "atc/errors.hpp"
#include "atc/validation.hpp"

using namespace atc;

TEST_CASE("error metrics on identical and simple series") {
    const std::vector<double> x = {1.0, 2.0, 3.0};
    const std::vector<double> same = x;
    const std::vector<double> flat = {1.0, 1.0, 1.0};
    CHECK(d1(x, same) == 0.0);
    CHECK(d_inf(x, same) == 0.0);
    CHECK(d1(x, flat) == doctest::Approx(1.0));
    CHECK(d_inf(x, flat) == doctest::Approx(2.0));
}

TEST_CASE("metrics validate their inputs") {
    const std::vector<double> x = {1.0, 2.0};
    const std::vector<double> y = {1.0};
    CHECK_THROWS_AS(d1(x, y), LengthMismatch);
    CHECK_THROWS_AS(d_inf(x, y), LengthMismatch);
    const std::vector<double> empty;
    CHECK_THROWS_AS(d1(empty, empty), EmptySeries);
}

TEST_CASE("d1 is invariant under permutations of paired samples, d_inf dominates d1") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> x(64), y(64);
    for (size_t k = 0; k < x.size(); ++k) {
        x[k] = u(rng);
        y[k] = u(rng);
    }
    const double base_d1 = d1(x, y);
    CHECK(d_inf(x, y) >= base_d1);

    std::vector<size_t> idx(x.size());
    for (size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<double> xp, yp;
    for (size_t k : idx) {
        xp.push_back(x[k]);
        yp.push_back(y[k]);
    }
    CHECK(d1(xp, yp) == doctest::Approx(base_d1).epsilon(1e-12));
}

TEST_CASE("the full-information variant reproduces the truth exactly") {
    ScenarioConfig base;
    base.noise.enabled = false;
    const std::vector<ModelVariant> variants = {{true, true}};
    const auto reports = table1_experiment(base, default_test_road(), variants);
    REQUIRE(reports.size() == 9);
    for (const auto& r : reports) {
        CHECK(r.d1_cms == doctest::Approx(0.0).scale(1.0));
        CHECK(r.d_inf_cms >= r.d1_cms);
        CHECK(r.n_samples > 1000);
    }
}

TEST_CASE("experiment grid reproduces the qualitative error trends") {
    ScenarioConfig base;
    base.noise.enabled = false;
    const std::vector<ModelVariant> variants = {{false, false}, {true, false}, {true, true}};
    const auto reports = table1_experiment(base, default_test_road(), variants);
    REQUIRE(reports.size() == 27);

    const auto trends = check_trends(reports);
    CHECK(trends.steady_vs_transient);
    CHECK(trends.slip_angles_help);
    CHECK(trends.monotone_in_gear);
    if (!trends.all()) {
        MESSAGE(trends.detail);
    }

    for (const auto& r : reports) {
        CHECK(r.d_inf_cms >= r.d1_cms);
        CHECK(r.d1_cms >= 0.0);
    }
}

TEST_CASE("straight-road samples are excluded from the metrics") {
    ScenarioConfig base;
    base.noise.enabled = false;
    RoadProfile straight;
    straight.segments = {{SegmentKind::straight, 100.0, 0.0}};
    const std::vector<ModelVariant> variants = {{false, false}};
    const auto reports = table1_experiment(base, straight, variants);
    for (const auto& r : reports) {
        CHECK(r.n_samples == 0u);  // no |gamma| >= 1 deg samples at all
        CHECK(r.d1_cms == 0.0);
    }
}

TEST_CASE("variant names are stable identifiers") {
    CHECK(variant_name({false, false}) == "steady_state_alpha0");
    CHECK(variant_name({true, false}) == "transient_alpha0");
    CHECK(variant_name({true, true}) == "transient_alpha");
}
