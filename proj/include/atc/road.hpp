#pragma once

#include <vector>

#include "atc/units.hpp"

namespace atc {

enum class SegmentKind { straight, arc };

struct RoadSegment {
    SegmentKind kind = SegmentKind::straight;
    double length = 0.0;           // [m]
    double steering_target = 0.0;  // [rad]; 0 for straight segments
};

/// A test road as a sequence of straights and constant-steering arcs.
/// Steering transitions ramp linearly at `ramp_rate` at the start of each
/// segment, so a segment must be long enough to contain its own ramp.
struct RoadProfile {
    std::vector<RoadSegment> segments;
    double max_steering = deg_to_rad(45.0);  // [rad]
    double ramp_rate = 0.1;                  // [rad/s]
};

struct SteeringSample {
    double t = 0.0;          // [s]
    double gamma = 0.0;      // [rad]
    double gamma_dot = 0.0;  // [rad/s]
};

/// Samples the steering command for a vehicle tracking `profile` at constant
/// speed `v12`. gamma is continuous and piecewise linear in time; gamma_dot
/// is emitted as the exact discrete derivative of the emitted gamma, i.e.
/// gamma[k] == gamma[k-1] + gamma_dot[k]*dt holds to roundoff (gamma_dot[0]
/// is 0). Throws InfeasibleRoad when a segment is shorter than the distance
/// covered during its steering ramp.
std::vector<SteeringSample> road_to_steering(const RoadProfile& profile, double v12,
                                             double dt = 0.01);

/// Total centerline length of the road [m].
double road_length(const RoadProfile& profile);

/// Default test road: alternating arcs up to the 45 deg steering limit in
/// both directions, joined by short straights.
RoadProfile default_test_road();

/// Straight lead-in followed by one long constant-steering arc; used for
/// steady-turn experiments. Passing gamma == 0 yields an all-straight road.
RoadProfile steady_turn_road(double gamma, double lead_in_m = 40.0, double arc_m = 240.0);

}  // namespace atc
