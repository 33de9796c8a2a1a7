#include <doctest.h>

#include <cmath>
#include <random>

#include "atc/errors.hpp"
#include "atc/tuning.hpp"

using namespace atc;

namespace {

PointCloud cloud_from(std::initializer_list<CloudPoint> pts) {
    PointCloud c;
    c.points = pts;
    return c;
}

PointCloud parabola_cloud(double c0, double c1, double c2, int n = 200) {
    PointCloud c;
    for (int k = 0; k < n; ++k) {
        const double gamma = -0.8 + 1.6 * static_cast<double>(k) / (n - 1);
        c.points.push_back({gamma, c0 + c1 * gamma + c2 * gamma * gamma, Gear::f1, Load::zero});
    }
    return c;
}

ScenarioConfig tuning_base(bool noise, bool alpha) {
    ScenarioConfig base;
    base.seed = 42;
    base.noise.enabled = noise;
    base.slip_angles_on = alpha;
    base.sensor_set = SensorSet::wheel_tach;
    return base;
}

}  // namespace

TEST_CASE("single-bin envelope catches min and max") {
    const auto c = cloud_from({{0.0, -0.1, Gear::f1, Load::zero},
                               {0.0, 0.2, Gear::f1, Load::zero},
                               {0.4, 0.3, Gear::f1, Load::zero}});
    const auto env = envelope(c, 0.5);
    REQUIRE(env.bins.size() == 1);
    CHECK(env.bins[0].min_g == -0.1);
    CHECK(env.bins[0].max_g == 0.3);
    CHECK(env.bins[0].count == 3);
}

TEST_CASE("envelope rejects an empty cloud") {
    CHECK_THROWS_AS(envelope(PointCloud{}, 0.1), EmptyRange);
}

TEST_CASE("every point lies inside its own envelope bin") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u_gamma(-0.7, 0.7);
    std::uniform_real_distribution<double> u_g(-0.5, 0.5);
    PointCloud c;
    for (int k = 0; k < 2000; ++k) c.points.push_back({u_gamma(rng), u_g(rng)});

    const auto env = envelope(c, deg_to_rad(2.5));
    for (const CloudPoint& p : c.points) {
        const long idx = static_cast<long>(std::floor(p.gamma / env.bin_width));
        bool found = false;
        for (const auto& b : env.bins) {
            if (std::abs(b.gamma_center - (idx + 0.5) * env.bin_width) < 1e-12) {
                found = true;
                REQUIRE(p.g >= b.min_g);
                REQUIRE(p.g <= b.max_g);
            }
        }
        REQUIRE(found);
    }
}

TEST_CASE("adding a point cannot shrink the envelope") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u_gamma(-0.7, 0.7);
    std::uniform_real_distribution<double> u_g(-0.5, 0.5);
    PointCloud c;
    for (int k = 0; k < 500; ++k) c.points.push_back({u_gamma(rng), u_g(rng)});

    const auto before = envelope(c, deg_to_rad(2.5));
    c.points.push_back({0.1, 0.9});
    c.points.push_back({0.9, 0.0});  // extends the range
    const auto after = envelope(c, deg_to_rad(2.5));

    for (const auto& b0 : before.bins) {
        for (const auto& b1 : after.bins) {
            if (std::abs(b0.gamma_center - b1.gamma_center) < 1e-12) {
                CHECK(b1.max_g >= b0.max_g);
                CHECK(b1.min_g <= b0.min_g);
            }
        }
    }
}

TEST_CASE("three points make their own triangle hull") {
    const auto c = cloud_from(
        {{0.0, 0.0, Gear::f1, Load::zero}, {1.0, 0.0, Gear::f1, Load::zero},
         {0.5, 1.0, Gear::f1, Load::zero}});
    const auto hull = convex_hull(c.points);
    REQUIRE(hull.size() == 3);
}

TEST_CASE("every point lies inside or on the hull") {
    std::mt19937_64 rng(33);
    std::normal_distribution<double> n(0.0, 0.3);
    PointCloud c;
    for (int k = 0; k < 1000; ++k) c.points.push_back({n(rng), n(rng)});

    const auto upper = hull_upper_curve(c.points);
    const auto lower = hull_lower_curve(c.points);
    BoundProfile hull_band;
    hull_band.kind = BoundKind::piecewise_linear;
    hull_band.upper_pts = upper;
    hull_band.lower_pts = lower;
    for (const CloudPoint& p : c.points) {
        REQUIRE(hull_band.upper_at(p.gamma) >= p.g - 1e-12);
        REQUIRE(hull_band.lower_at(p.gamma) <= p.g + 1e-12);
    }
}

TEST_CASE("hull chains contain the envelope curves") {
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> u_gamma(-0.8, 0.8);
    std::normal_distribution<double> noise(0.0, 0.05);
    PointCloud c;
    for (int k = 0; k < 5000; ++k) {
        const double gamma = u_gamma(rng);
        c.points.push_back({gamma, 0.3 * gamma * gamma + noise(rng)});
    }

    BoundProfile hull_band;
    hull_band.kind = BoundKind::piecewise_linear;
    hull_band.upper_pts = hull_upper_curve(c.points);
    hull_band.lower_pts = hull_lower_curve(c.points);

    const auto env = envelope(c, deg_to_rad(2.5));
    BoundProfile env_band;
    env_band.kind = BoundKind::piecewise_linear;
    env_band.upper_pts = envelope_upper_anchors(env);
    env_band.lower_pts = envelope_lower_anchors(env);

    // Between the outermost anchors every envelope vertex is a cloud point,
    // so the convex hull must contain the whole envelope band.
    const double lo = std::max(env_band.upper_pts.front().gamma,
                               env_band.lower_pts.front().gamma);
    const double hi = std::min(env_band.upper_pts.back().gamma,
                               env_band.lower_pts.back().gamma);
    for (double gamma = lo; gamma <= hi; gamma += 0.01) {
        REQUIRE(hull_band.upper_at(gamma) >= env_band.upper_at(gamma) - 1e-9);
        REQUIRE(hull_band.lower_at(gamma) <= env_band.lower_at(gamma) + 1e-9);
    }
}

TEST_CASE("degenerate hulls come back as sorted point lists") {
    CHECK(convex_hull(cloud_from({{0.3, 0.1, Gear::f1, Load::zero}}).points).size() == 1);
    const auto collinear = cloud_from({{0.0, 0.0, Gear::f1, Load::zero},
                                       {0.5, 0.5, Gear::f1, Load::zero},
                                       {1.0, 1.0, Gear::f1, Load::zero}});
    const auto hull = convex_hull(collinear.points);
    CHECK(hull.size() == 3);
}

TEST_CASE("quadratic fit recovers an exact parabola with zero margin") {
    const auto c = parabola_cloud(0.0, 0.12, 0.4);
    const auto fit = fit_quadratic(c, BoundSide::upper, false);
    CHECK(fit.coeffs.c0 == doctest::Approx(0.0).scale(1.0));
    CHECK(fit.coeffs.c1 == doctest::Approx(0.12).epsilon(1e-9));
    CHECK(fit.coeffs.c2 == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(std::abs(fit.margin) < 1e-9);

    const auto with_c0 = fit_quadratic(parabola_cloud(0.21, -0.05, 0.3), BoundSide::lower, true);
    CHECK(with_c0.coeffs.c0 == doctest::Approx(0.21).epsilon(1e-9));
    CHECK(with_c0.coeffs.c1 == doctest::Approx(-0.05).epsilon(1e-9));
    CHECK(with_c0.coeffs.c2 == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("no-intercept fits pass through zero") {
    std::mt19937_64 rng(35);
    std::normal_distribution<double> noise(0.0, 0.02);
    PointCloud c;
    for (int k = 0; k < 3000; ++k) {
        const double gamma = -0.8 + 1.6 * static_cast<double>(k) / 2999.0;
        c.points.push_back({gamma, 0.1 * gamma + 0.3 * gamma * gamma + noise(rng)});
    }
    const auto fit = fit_quadratic(c, BoundSide::upper, false);
    CHECK(fit.coeffs.eval(0.0) == 0.0);
    CHECK(fit.margin > 0.0);
}

TEST_CASE("quadratic fit on a single steering angle is rank deficient") {
    PointCloud c;
    for (int k = 0; k < 50; ++k) c.points.push_back({0.2, 0.01 * k});
    CHECK_THROWS_AS(fit_quadratic(c, BoundSide::upper, true), RankDeficient);
}

TEST_CASE("built profiles cover 100% of their calibration points for every method") {
    std::mt19937_64 rng(36);
    std::uniform_real_distribution<double> u_gamma(-0.8, 0.8);
    std::normal_distribution<double> noise(0.0, 0.05);
    PointCloud c;
    for (int k = 0; k < 5000; ++k) {
        const double gamma = u_gamma(rng);
        c.points.push_back({gamma, 0.25 * gamma * gamma + noise(rng)});
    }

    for (TuneMethod method : {TuneMethod::envelope, TuneMethod::hull, TuneMethod::quadratic}) {
        TuneOptions opt;
        opt.method = method;
        opt.headroom_sigma = 0.0;  // the covering margin alone must close the band
        const auto profile = build_profile(c, opt);
        for (const CloudPoint& p : c.points) {
            REQUIRE(bound_check(p.g, p.gamma, profile).inside);
        }
    }
}

TEST_CASE("collect on the zero-noise grid yields a degenerate flat basic cloud") {
    auto base = tuning_base(false, false);
    const auto grid = calibration_grid(base);
    REQUIRE(grid.size() == 9);
    const auto cloud = collect(grid, default_test_road(), DetectorId::basic, false);
    REQUIRE(!cloud.points.empty());
    for (const CloudPoint& p : cloud.points) {
        REQUIRE(std::abs(p.g) < 1e-6);
    }
}

TEST_CASE("collect covers the full steering range of the road") {
    auto base = tuning_base(true, true);
    const auto grid = calibration_grid(base);
    const auto cloud = collect(grid, default_test_road(), DetectorId::basic, false);
    double lo = 0.0, hi = 0.0;
    for (const CloudPoint& p : cloud.points) {
        lo = std::min(lo, p.gamma);
        hi = std::max(hi, p.gamma);
    }
    CHECK(lo < deg_to_rad(-44.0));
    CHECK(hi > deg_to_rad(44.0));
}

TEST_CASE("the five-sample mean shrinks the wheel-tach cloud peaks") {
    auto base = tuning_base(true, true);
    const auto grid = calibration_grid(base);
    const auto raw = collect(grid, default_test_road(), DetectorId::wheel_tach, false);
    const auto filtered = collect(grid, default_test_road(), DetectorId::wheel_tach, true);

    double max_raw = 0.0, max_filtered = 0.0;
    for (const CloudPoint& p : raw.points) max_raw = std::max(max_raw, std::abs(p.g));
    for (const CloudPoint& p : filtered.points) max_filtered = std::max(max_filtered, std::abs(p.g));
    CHECK(max_filtered < max_raw);
}

TEST_CASE("collect refuses scenarios with slip events") {
    auto base = tuning_base(false, false);
    auto grid = calibration_grid(base);
    grid[0].slip_events = {{1, 0.0, 1.0, 0.5}};
    CHECK_THROWS_AS(collect(grid, default_test_road(), DetectorId::basic, false),
                    std::invalid_argument);
}

TEST_CASE("ground-speed quadratic band has intercepts on the 0.2 m/s scale") {
    auto base = tuning_base(true, true);
    const auto grid = calibration_grid(base);
    const auto cloud = collect(grid, default_test_road(), DetectorId::ground_front, false);
    TuneOptions opt;
    opt.method = TuneMethod::quadratic;
    opt.with_intercept = true;
    const auto profile = build_profile(cloud, opt);
    // Held ground-speed noise dominates this residual, so the band needs a
    // clear nonzero intercept; its size tracks the configured noise level.
    CHECK(profile.upper_at(0.0) > 0.05);
    CHECK(profile.upper_at(0.0) < 0.45);
    CHECK(profile.lower_at(0.0) < -0.05);
    CHECK(profile.lower_at(0.0) > -0.45);
}

TEST_CASE("profile bands are asymmetric when the cloud is") {
    auto base = tuning_base(true, true);
    const auto grid = calibration_grid(base);
    const auto cloud = collect(grid, default_test_road(), DetectorId::basic, false);
    TuneOptions opt;
    opt.method = TuneMethod::envelope;
    const auto profile = build_profile(cloud, opt);
    // Slip angles push the basic residual up at high steering but not down.
    const double gamma = deg_to_rad(43.0);
    CHECK(profile.upper_at(gamma) > -profile.lower_at(gamma) + 0.01);
}
