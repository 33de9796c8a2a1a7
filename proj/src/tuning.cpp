#include "atc/tuning.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

#include "atc/errors.hpp"

namespace atc {

PointCloud collect(std::span<const ScenarioConfig> grid, const RoadProfile& road,
                   DetectorId detector, bool filter) {
    PointCloud cloud;
    cloud.detector = detector;
    cloud.filtered = filter;
    if (!grid.empty()) cloud.base_seed = grid.front().seed;

    for (const ScenarioConfig& cfg : grid) {
        if (!cfg.slip_events.empty()) {
            throw std::invalid_argument("collect: calibration scenarios must be slip-free");
        }
        const auto result = run_scenario(cfg, road);
        MovingAverage ma(5);
        for (const SensorFrame& frame : result.sensors) {
            double g = residual(detector, frame, cfg.geometry);
            if (filter) g = ma.push(g);
            cloud.points.push_back({frame.gamma, g, cfg.gear, cfg.load});
        }
    }
    return cloud;
}

Envelope envelope(const PointCloud& cloud, double bin_width) {
    if (cloud.points.empty()) {
        throw EmptyRange("envelope: point cloud is empty");
    }
    if (bin_width <= 0.0) {
        throw std::invalid_argument("envelope: bin width must be positive");
    }

    // Bins anchored at gamma = 0 so that adding points never moves existing
    // bin boundaries.
    std::map<long, EnvelopeBin> bins;
    for (const CloudPoint& p : cloud.points) {
        const long idx = static_cast<long>(std::floor(p.gamma / bin_width));
        auto [it, fresh] = bins.try_emplace(idx);
        EnvelopeBin& b = it->second;
        if (fresh) {
            b.gamma_center = (static_cast<double>(idx) + 0.5) * bin_width;
            b.min_g = b.max_g = p.g;
            b.gamma_at_min = b.gamma_at_max = p.gamma;
        } else {
            if (p.g < b.min_g) {
                b.min_g = p.g;
                b.gamma_at_min = p.gamma;
            }
            if (p.g > b.max_g) {
                b.max_g = p.g;
                b.gamma_at_max = p.gamma;
            }
        }
        ++b.count;
    }

    Envelope env;
    env.bin_width = bin_width;
    env.bins.reserve(bins.size());
    for (const auto& [idx, bin] : bins) env.bins.push_back(bin);
    return env;
}

std::vector<Breakpoint> envelope_upper_curve(const Envelope& env) {
    std::vector<Breakpoint> pts;
    pts.reserve(env.bins.size());
    for (const EnvelopeBin& b : env.bins) pts.push_back({b.gamma_center, b.max_g});
    return pts;
}

std::vector<Breakpoint> envelope_lower_curve(const Envelope& env) {
    std::vector<Breakpoint> pts;
    pts.reserve(env.bins.size());
    for (const EnvelopeBin& b : env.bins) pts.push_back({b.gamma_center, b.min_g});
    return pts;
}

std::vector<Breakpoint> envelope_upper_anchors(const Envelope& env) {
    std::vector<Breakpoint> pts;
    pts.reserve(env.bins.size());
    for (const EnvelopeBin& b : env.bins) pts.push_back({b.gamma_at_max, b.max_g});
    return pts;
}

std::vector<Breakpoint> envelope_lower_anchors(const Envelope& env) {
    std::vector<Breakpoint> pts;
    pts.reserve(env.bins.size());
    for (const EnvelopeBin& b : env.bins) pts.push_back({b.gamma_at_min, b.min_g});
    return pts;
}

namespace {

double cross(const HullPoint& o, const HullPoint& a, const HullPoint& b) {
    return (a.gamma - o.gamma) * (b.g - o.g) - (a.g - o.g) * (b.gamma - o.gamma);
}

std::vector<HullPoint> sorted_points(std::span<const CloudPoint> points) {
    std::vector<HullPoint> pts;
    pts.reserve(points.size());
    for (const CloudPoint& p : points) pts.push_back({p.gamma, p.g});
    std::sort(pts.begin(), pts.end(), [](const HullPoint& a, const HullPoint& b) {
        if (a.gamma != b.gamma) return a.gamma < b.gamma;
        return a.g < b.g;
    });
    return pts;
}

// Lower and upper chains of the monotone-chain hull, both left to right.
std::pair<std::vector<HullPoint>, std::vector<HullPoint>> hull_chains(
    std::span<const CloudPoint> points) {
    const auto pts = sorted_points(points);
    std::vector<HullPoint> lower, upper;
    for (const HullPoint& p : pts) {
        while (lower.size() >= 2 && cross(lower[lower.size() - 2], lower.back(), p) <= 0.0) {
            lower.pop_back();
        }
        lower.push_back(p);
    }
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), *it) <= 0.0) {
            upper.pop_back();
        }
        upper.push_back(*it);
    }
    std::reverse(upper.begin(), upper.end());
    return {std::move(lower), std::move(upper)};
}

}  // namespace

std::vector<HullPoint> convex_hull(std::span<const CloudPoint> points) {
    if (points.size() < 3) {
        return sorted_points(points);
    }
    auto [lower, upper] = hull_chains(points);
    // Counterclockwise polygon: lower chain, then upper chain right-to-left,
    // dropping the shared endpoints.
    std::vector<HullPoint> hull(lower.begin(), lower.end() - 1);
    for (auto it = upper.rbegin(); it != upper.rend() - 1; ++it) hull.push_back(*it);
    if (hull.size() < 3) return sorted_points(points);  // collinear cloud
    return hull;
}

std::vector<Breakpoint> hull_upper_curve(std::span<const CloudPoint> points) {
    std::vector<Breakpoint> out;
    const auto chains = hull_chains(points);
    for (const HullPoint& p : chains.second) out.push_back({p.gamma, p.g});
    return out;
}

std::vector<Breakpoint> hull_lower_curve(std::span<const CloudPoint> points) {
    std::vector<Breakpoint> out;
    const auto chains = hull_chains(points);
    for (const HullPoint& p : chains.first) out.push_back({p.gamma, p.g});
    return out;
}

namespace {

QuadCoeffs least_squares_quadratic(std::span<const Breakpoint> pts, bool with_intercept) {
    const int cols = with_intercept ? 3 : 2;
    if (static_cast<int>(pts.size()) < cols) {
        throw RankDeficient("quadratic fit needs at least " + std::to_string(cols) + " bins");
    }

    Eigen::MatrixXd a(pts.size(), cols);
    Eigen::VectorXd b(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        const double gamma = pts[i].gamma;
        int col = 0;
        if (with_intercept) a(i, col++) = 1.0;
        a(i, col++) = gamma;
        a(i, col) = gamma * gamma;
        b(i) = pts[i].value;
    }

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < cols) {
        throw RankDeficient("quadratic fit is rank deficient: steering angles do not vary");
    }
    const Eigen::VectorXd x = qr.solve(b);

    QuadCoeffs c;
    if (with_intercept) {
        c.c0 = x(0);
        c.c1 = x(1);
        c.c2 = x(2);
    } else {
        c.c1 = x(0);
        c.c2 = x(1);
    }
    return c;
}

double covering_margin(const PointCloud& cloud, BoundSide side,
                       const std::function<double(double)>& curve) {
    double margin = -std::numeric_limits<double>::infinity();
    for (const CloudPoint& p : cloud.points) {
        const double gap = (side == BoundSide::upper) ? p.g - curve(p.gamma)
                                                      : curve(p.gamma) - p.g;
        margin = std::max(margin, gap);
    }
    return margin;
}

// Spread of the residuals about a central quadratic, used to widen the band
// beyond the calibration data's own extremes.
double residual_spread(const PointCloud& cloud) {
    std::vector<Breakpoint> pts;
    pts.reserve(cloud.points.size());
    for (const CloudPoint& p : cloud.points) pts.push_back({p.gamma, p.g});
    QuadCoeffs central;
    try {
        central = least_squares_quadratic(pts, true);
    } catch (const RankDeficient&) {
        // Fall back to the mean for clouds pinned at one steering angle.
        double mean = 0.0;
        for (const CloudPoint& p : cloud.points) mean += p.g;
        central.c0 = mean / static_cast<double>(cloud.points.size());
    }
    double var = 0.0;
    for (const CloudPoint& p : cloud.points) {
        const double resid = p.g - central.eval(p.gamma);
        var += resid * resid;
    }
    return std::sqrt(var / static_cast<double>(cloud.points.size()));
}

}  // namespace

QuadFit fit_quadratic(const PointCloud& cloud, BoundSide side, bool with_intercept,
                      double bin_width) {
    const Envelope env = envelope(cloud, bin_width);
    std::vector<Breakpoint> pts;
    pts.reserve(env.bins.size());
    for (const EnvelopeBin& b : env.bins) {
        if (side == BoundSide::upper) {
            pts.push_back({b.gamma_at_max, b.max_g});
        } else {
            pts.push_back({b.gamma_at_min, b.min_g});
        }
    }

    QuadFit fit;
    fit.coeffs = least_squares_quadratic(pts, with_intercept);
    fit.margin = covering_margin(cloud, side,
                                 [&](double gamma) { return fit.coeffs.eval(gamma); });
    return fit;
}

std::string tune_method_name(TuneMethod method) {
    switch (method) {
        case TuneMethod::envelope: return "envelope";
        case TuneMethod::hull: return "hull";
        case TuneMethod::quadratic: return "quadratic";
    }
    throw std::invalid_argument("unknown tuning method");
}

TuneMethod tune_method_from_name(const std::string& name) {
    if (name == "envelope") return TuneMethod::envelope;
    if (name == "hull") return TuneMethod::hull;
    if (name == "quadratic") return TuneMethod::quadratic;
    throw std::invalid_argument("unknown tuning method: " + name);
}

BoundProfile build_profile(const PointCloud& cloud, const TuneOptions& options) {
    if (cloud.points.empty()) {
        throw EmptyRange("build_profile: point cloud is empty");
    }

    BoundProfile profile;
    profile.detector = cloud.detector;
    profile.filtered = cloud.filtered;

    double gmin = cloud.points.front().gamma;
    double gmax = gmin;
    for (const CloudPoint& p : cloud.points) {
        gmin = std::min(gmin, p.gamma);
        gmax = std::max(gmax, p.gamma);
    }
    profile.gamma_min = gmin;
    profile.gamma_max = gmax;

    switch (options.method) {
        case TuneMethod::envelope: {
            const Envelope env = envelope(cloud, options.bin_width);
            profile.kind = BoundKind::piecewise_linear;
            profile.upper_pts = envelope_upper_anchors(env);
            profile.lower_pts = envelope_lower_anchors(env);
            break;
        }
        case TuneMethod::hull: {
            profile.kind = BoundKind::piecewise_linear;
            profile.upper_pts = hull_upper_curve(cloud.points);
            profile.lower_pts = hull_lower_curve(cloud.points);
            break;
        }
        case TuneMethod::quadratic: {
            profile.kind = BoundKind::quadratic;
            profile.upper_coeffs =
                fit_quadratic(cloud, BoundSide::upper, options.with_intercept, options.bin_width)
                    .coeffs;
            profile.lower_coeffs =
                fit_quadratic(cloud, BoundSide::lower, options.with_intercept, options.bin_width)
                    .coeffs;
            break;
        }
    }

    // Minimal covering margin first (never negative here: shrinking the band
    // below its own base curve is not wanted for a safety bound), then the
    // headroom for unseen data.
    const double head = options.headroom_sigma * residual_spread(cloud);
    const double cover_u = covering_margin(
        cloud, BoundSide::upper, [&](double gamma) { return profile.upper_at(gamma); });
    profile.upper_margin = std::max(cover_u, 0.0) + head;
    const double cover_l = covering_margin(
        cloud, BoundSide::lower, [&](double gamma) { return profile.lower_at(gamma); });
    profile.lower_margin = std::max(cover_l, 0.0) + head;

    return profile;
}

std::vector<ScenarioConfig> calibration_grid(const ScenarioConfig& base) {
    std::vector<ScenarioConfig> grid;
    grid.reserve(9);
    uint64_t idx = 0;
    for (Gear gear : {Gear::f1, Gear::f2, Gear::f3}) {
        for (Load load : {Load::zero, Load::half, Load::full}) {
            ScenarioConfig cfg = base;
            cfg.gear = gear;
            cfg.load = load;
            cfg.slip_events.clear();
            cfg.sensor_set = SensorSet::wheel_tach;
            cfg.seed = base.seed + idx;
            grid.push_back(cfg);
            ++idx;
        }
    }
    return grid;
}

}  // namespace atc
