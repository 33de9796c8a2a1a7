#pragma once

#include "atc/units.hpp"

namespace atc {

/// Planar geometry and driveline ratios of an articulated hauler.
///
/// Sign conventions used throughout the library:
///  - steering angle gamma > 0 is a left turn (counterclockwise body rates
///    are positive),
///  - slip angle alpha is the counterclockwise angle from an axle's heading
///    to its actual velocity direction,
///  - odd wheel indices (1, 3, 5) sit on the left side of the vehicle, even
///    ones (2, 4, 6) on the right.
struct VehicleGeometry {
    double l1 = 1.278;     // front axle to steering joint [m]
    double l2 = 3.265;     // front bogie axle to steering joint [m]
    double c = 1.318;      // half axle track [m]
    double r = 0.955;      // outer tire radius [m]
    double i_diff = 3.09;  // differential ratio
    double i_hub = 6.0;    // hub reduction ratio

    // Total conversion from a driveline tachometer shaft to the wheels.
    double gear_ratio() const { return i_diff * i_hub; }

    bool valid() const {
        return l1 > 0.0 && l2 > 0.0 && c > 0.0 && r > 0.0 && i_diff > 0.0 && i_hub > 0.0;
    }

    // Production A40-series values; the defaults above are the same numbers.
    static VehicleGeometry a40() { return VehicleGeometry{}; }
};

/// Planar velocity state of one axle: translational speed at the axle
/// midpoint, body yaw rate, and the slip angle between heading and velocity.
struct AxleScrew {
    double v = 0.0;      // speed at axle midpoint [m/s], v >= 0
    double omega = 0.0;  // yaw rate [rad/s], counterclockwise positive
    double alpha = 0.0;  // slip angle [rad], physical range (-pi/2, pi/2)
};

/// One articulation joint between two bodies of a vehicle chain. The joint
/// sits a distance `a` behind the leading axle and `b` ahead of the trailing
/// axle.
struct JointConfig {
    double gamma = 0.0;      // joint angle [rad], |gamma| <= pi/2
    double gamma_dot = 0.0;  // joint angle rate [rad/s]
    double a = 0.0;          // leading axle to joint [m]
    double b = 0.0;          // trailing axle to joint [m]
};

enum class Side { left, right };

}  // namespace atc
