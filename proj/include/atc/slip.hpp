#pragma once

#include <array>

namespace atc {

/// Instantaneous state of one wheel for slip computations.
struct WheelSlipState {
    double omega = 0.0;  // wheel angular speed [rad/s], >= 0
    double v = 0.0;      // ground speed at the wheel [m/s], >= 0
    double alpha = 0.0;  // wheel slip angle [rad]
    double r = 1.0;      // outer tire radius [m]
};

/// Normalized longitudinal slip in [0, 1]. The driving branch divides by the
/// tire circumference speed, the braking branch by the ground speed; both
/// agree (= 0) at perfect rolling. Throws UndefinedSlip for the 0/0 case of a
/// stationary wheel on stationary ground.
double lambda_l(const WheelSlipState& s);

/// Non-normalized slip [m/s]: tire circumference speed minus ground speed
/// along the wheel heading. Positive while driving, negative while braking.
/// Reads as the distance a slipping wheel slides per second.
double s_l(const WheelSlipState& s);

/// Slip speeds of wheels 1..4 (tractor axle and front bogie axle).
struct SlipVector {
    std::array<double, 4> s{};
};

/// Basis of the slip combinations invisible to the wheel-tachometer residual:
/// span{(1,1,0,0), (0,0,1,1), (-1,1,-1,1)}.
std::array<SlipVector, 3> undetectable_basis();

/// Observable component s1 - s2 - s3 + s4 [m/s]; zero exactly on the span of
/// undetectable_basis.
double detect_component(const SlipVector& s);

}  // namespace atc
