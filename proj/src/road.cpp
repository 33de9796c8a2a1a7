#include "atc/road.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "atc/errors.hpp"

namespace atc {

namespace {

struct Phase {
    double t_start;  // [s]
    double t_end;
    double gamma_start;  // [rad]
    double rate;         // [rad/s], signed; 0 during holds
};

// Builds the continuous-time steering trajectory: per segment, a linear ramp
// from the previous target to the segment target followed by a hold.
std::vector<Phase> build_phases(const RoadProfile& profile, double v12) {
    std::vector<Phase> phases;
    double t = 0.0;
    double gamma = 0.0;
    for (size_t idx = 0; idx < profile.segments.size(); ++idx) {
        const RoadSegment& seg = profile.segments[idx];
        if (seg.length <= 0.0) {
            throw InfeasibleRoad("segment " + std::to_string(idx) + " has non-positive length");
        }
        const double target = (seg.kind == SegmentKind::straight) ? 0.0 : seg.steering_target;
        if (std::abs(target) > profile.max_steering + 1e-12) {
            throw InfeasibleRoad("segment " + std::to_string(idx) +
                                 " exceeds the steering limit");
        }
        const double duration = seg.length / v12;
        const double ramp_time = std::abs(target - gamma) / profile.ramp_rate;
        if (ramp_time > duration) {
            throw InfeasibleRoad("segment " + std::to_string(idx) +
                                 " is shorter than its steering ramp");
        }
        if (ramp_time > 0.0) {
            const double rate = (target > gamma) ? profile.ramp_rate : -profile.ramp_rate;
            phases.push_back({t, t + ramp_time, gamma, rate});
        }
        phases.push_back({t + ramp_time, t + duration, target, 0.0});
        t += duration;
        gamma = target;
    }
    return phases;
}

double gamma_at(const std::vector<Phase>& phases, double t) {
    for (const Phase& ph : phases) {
        if (t <= ph.t_end || &ph == &phases.back()) {
            const double tt = std::min(t, ph.t_end);
            return ph.gamma_start + ph.rate * (std::max(tt, ph.t_start) - ph.t_start);
        }
    }
    return 0.0;
}

}  // namespace

double road_length(const RoadProfile& profile) {
    double total = 0.0;
    for (const RoadSegment& seg : profile.segments) total += seg.length;
    return total;
}

std::vector<SteeringSample> road_to_steering(const RoadProfile& profile, double v12, double dt) {
    if (profile.segments.empty()) {
        throw InfeasibleRoad("road has no segments");
    }
    if (v12 <= 0.0 || dt <= 0.0 || profile.ramp_rate <= 0.0) {
        throw std::invalid_argument("road_to_steering: v12, dt and ramp_rate must be positive");
    }

    const auto phases = build_phases(profile, v12);
    const double total_time = phases.back().t_end;
    const size_t n = static_cast<size_t>(std::floor(total_time / dt)) + 1;

    std::vector<SteeringSample> out(n);
    for (size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * dt;
        out[k].t = t;
        out[k].gamma = gamma_at(phases, t);
        out[k].gamma_dot = (k == 0) ? 0.0 : (out[k].gamma - out[k - 1].gamma) / dt;
    }
    return out;
}

RoadProfile default_test_road() {
    RoadProfile road;
    road.segments = {
        {SegmentKind::straight, 30.0, 0.0},
        {SegmentKind::arc, 60.0, deg_to_rad(45.0)},
        {SegmentKind::straight, 25.0, 0.0},
        {SegmentKind::arc, 55.0, deg_to_rad(-30.0)},
        {SegmentKind::straight, 20.0, 0.0},
        {SegmentKind::arc, 50.0, deg_to_rad(20.0)},
        {SegmentKind::arc, 65.0, deg_to_rad(-45.0)},
        {SegmentKind::straight, 25.0, 0.0},
        {SegmentKind::arc, 55.0, deg_to_rad(35.0)},
        {SegmentKind::straight, 20.0, 0.0},
    };
    return road;
}

RoadProfile steady_turn_road(double gamma, double lead_in_m, double arc_m) {
    RoadProfile road;
    road.segments.push_back({SegmentKind::straight, lead_in_m, 0.0});
    if (gamma != 0.0) {
        road.segments.push_back({SegmentKind::arc, arc_m, gamma});
    } else {
        road.segments.push_back({SegmentKind::straight, arc_m, 0.0});
    }
    return road;
}

}  // namespace atc
