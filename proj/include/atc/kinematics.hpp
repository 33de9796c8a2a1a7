#pragma once

#include <span>
#include <vector>

#include "atc/geometry.hpp"

namespace atc {

// Denominators below this magnitude correspond to folded-back geometries;
// with |gamma| <= 45 deg the hauler denominator stays above l2*cos(45deg).
inline constexpr double kDenominatorEps = 1e-12;

/// Inverse of the tractor unit steady-state turning radius [1/m]:
///   sin(gamma + a12 - a34) / (l1*cos(a34 - gamma) + l2*cos(a34))
double p_fn(double alpha12, double alpha34, double gamma, const VehicleGeometry& geom);

/// Ratio of trailer to tractor steady-state turning radii [-]:
///   (l2*cos(a12 + gamma) + l1*cos(a12)) / (l1*cos(a34 - gamma) + l2*cos(a34))
double q_fn(double alpha12, double alpha34, double gamma, const VehicleGeometry& geom);

struct TwoBodySolution {
    double v34 = 0.0;     // trailer axle midpoint speed [m/s]
    double omega1 = 0.0;  // tractor yaw rate [rad/s]
    double omega2 = 0.0;  // trailer yaw rate [rad/s]
};

/// Closed-form velocity transfer across the steering joint of a two-body
/// articulated vehicle:
///   v34    = q(a12, a34, g)*v12        + q(-pi/2, a34, g)*gdot*l1
///   omega1 = p(a12, a34, g)*v12        + p(pi/2 - g, a34, g)*gdot*l2
///   omega2 = p(a12, a34, g)*v12        + p(-pi/2, a34, g)*gdot*l1
/// The rate terms read as phantom velocities with +-pi/2 side slip. The
/// solution always satisfies omega2 == omega1 - gamma_dot.
TwoBodySolution solve_two_body(double v12, double alpha12, double alpha34, double gamma,
                               double gamma_dot, const VehicleGeometry& geom);

/// Numeric velocity propagation along an articulated chain of n joints
/// (n + 1 axles). For each joint the hinge-velocity match
///   M_B(alpha_{k+1}) * Psi_{k+1} = R(gamma_k) * M_A(alpha_k) * Psi_k
/// is combined with the rigid-joint rate relation
///   Omega_{k+1} = Omega_k - gamma_dot_k
/// and solved as a 2x2 linear system in (v_{k+1}, Omega_k). Interior yaw
/// rates are re-derived at each joint; for kinematically consistent inputs
/// the per-joint solutions coincide.
///
/// `alphas` holds one slip angle per axle (size = joints.size() + 1).
/// Serves as the independent oracle for solve_two_body.
std::vector<AxleScrew> solve_chain_numeric(double v1, std::span<const double> alphas,
                                           std::span<const JointConfig> joints);

struct WheelVelocity {
    double speed = 0.0;  // [m/s]
    double alpha = 0.0;  // direction angle w.r.t. the axle heading [rad]
};

/// Ground velocity of a single wheel at lateral offset c from its axle
/// midpoint: v_k*[cos a_k, sin a_k] + Omega_k x r, with the cross term
/// +c*Omega for the right wheel and -c*Omega for the left.
WheelVelocity wheel_velocity(const AxleScrew& screw, double c, Side side);

}  // namespace atc
