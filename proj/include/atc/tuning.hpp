#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "atc/bounds.hpp"
#include "atc/detectors.hpp"
#include "atc/sim.hpp"

namespace atc {

struct CloudPoint {
    double gamma = 0.0;  // measured steering angle [rad]
    double g = 0.0;      // detector residual [m/s]
    Gear gear = Gear::f1;
    Load load = Load::zero;
};

/// (gamma, residual) pairs harvested from calibration runs without slip
/// events, tagged with their grid cell.
struct PointCloud {
    std::vector<CloudPoint> points;
    DetectorId detector = DetectorId::basic;
    bool filtered = false;
    uint64_t base_seed = 0;
};

/// Runs every scenario in `grid` over `road` and evaluates the detector on
/// each sensor frame. Scenarios must be slip-free; `filter` routes the
/// residual through the 5-sample mean (reset per scenario).
PointCloud collect(std::span<const ScenarioConfig> grid, const RoadProfile& road,
                   DetectorId detector, bool filter);

struct EnvelopeBin {
    double gamma_center = 0.0;
    double min_g = 0.0;
    double max_g = 0.0;
    double gamma_at_min = 0.0;  // steering angle of the extremal points
    double gamma_at_max = 0.0;
    std::size_t count = 0;
};

/// Per-bin residual extrema over a fixed steering-angle grid anchored at
/// gamma = 0 (bin k covers [k*w, (k+1)*w)); only populated bins appear.
struct Envelope {
    double bin_width = 0.0;
    std::vector<EnvelopeBin> bins;
};

Envelope envelope(const PointCloud& cloud, double bin_width);

// Bin extrema as piecewise-linear boundary curves over the bin centers.
std::vector<Breakpoint> envelope_upper_curve(const Envelope& env);
std::vector<Breakpoint> envelope_lower_curve(const Envelope& env);

// The same extrema anchored at the steering angle where each occurred. Every
// vertex is then an actual cloud point, so these curves always run inside the
// cloud's convex hull; profiles are built on them.
std::vector<Breakpoint> envelope_upper_anchors(const Envelope& env);
std::vector<Breakpoint> envelope_lower_anchors(const Envelope& env);

struct HullPoint {
    double gamma = 0.0;
    double g = 0.0;
};

/// Convex hull of the cloud in the (gamma, g) plane, counterclockwise,
/// via the monotone-chain construction with lexicographic ties. Degenerate
/// inputs (fewer than 3 points, collinear clouds) return the degenerate hull.
std::vector<HullPoint> convex_hull(std::span<const CloudPoint> points);

// Upper / lower hull chains, left to right, as boundary curves.
std::vector<Breakpoint> hull_upper_curve(std::span<const CloudPoint> points);
std::vector<Breakpoint> hull_lower_curve(std::span<const CloudPoint> points);

enum class BoundSide { upper, lower };

struct QuadFit {
    QuadCoeffs coeffs;
    double margin = 0.0;  // smallest additive shift that covers every raw point
};

/// Least-squares quadratic through the per-bin extrema (each at the steering
/// angle where it occurred), then the smallest additive margin that makes the
/// curve dominate (upper) or be dominated by (lower) every raw point. With
/// `with_intercept` false the fitted polynomial passes through zero.
QuadFit fit_quadratic(const PointCloud& cloud, BoundSide side, bool with_intercept,
                      double bin_width = deg_to_rad(2.5));

enum class TuneMethod { envelope, hull, quadratic };

std::string tune_method_name(TuneMethod method);
TuneMethod tune_method_from_name(const std::string& name);

struct TuneOptions {
    TuneMethod method = TuneMethod::envelope;
    double bin_width = deg_to_rad(2.5);
    bool with_intercept = true;   // quadratic fits only
    double headroom_sigma = 2.0;  // extra band width in units of the cloud's
                                  // residual spread about a central fit
};

/// Turns a calibration cloud into a bound profile: base curves from the
/// chosen method, then the minimal covering margin plus
/// headroom_sigma * (residual spread) on each side, so the band holds with
/// room to spare on data the calibration never saw.
BoundProfile build_profile(const PointCloud& cloud, const TuneOptions& options);

/// The 3 gears x 3 loads calibration grid. Cell seeds are base.seed + index;
/// slip events are stripped; every cell carries the full sensor tier.
std::vector<ScenarioConfig> calibration_grid(const ScenarioConfig& base);

}  // namespace atc
