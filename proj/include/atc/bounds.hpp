#pragma once

#include <string>
#include <vector>

#include "atc/detectors.hpp"
#include "atc/geometry.hpp"

namespace atc {

enum class BoundKind { piecewise_linear, quadratic };

/// c0 + c1*gamma + c2*gamma^2
struct QuadCoeffs {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;

    double eval(double gamma) const { return c0 + gamma * (c1 + gamma * c2); }
};

struct Breakpoint {
    double gamma = 0.0;
    double value = 0.0;
};

/// Steering-dependent tolerance band l(gamma) <= g <= u(gamma) for one
/// detector residual. Curves are either quadratics or piecewise-linear
/// breakpoint tables over the calibrated steering range; the additive margins
/// are the inflation applied on top of the raw fit so that the band covers
/// every calibration point (plus any configured headroom).
struct BoundProfile {
    DetectorId detector = DetectorId::basic;
    BoundKind kind = BoundKind::piecewise_linear;

    QuadCoeffs upper_coeffs;
    QuadCoeffs lower_coeffs;
    std::vector<Breakpoint> upper_pts;  // sorted by gamma
    std::vector<Breakpoint> lower_pts;

    double gamma_min = -deg_to_rad(45.0);
    double gamma_max = deg_to_rad(45.0);
    double upper_margin = 0.0;  // added to the upper curve
    double lower_margin = 0.0;  // subtracted from the lower curve

    bool filtered = false;       // residual passed through the 5-sample mean
    std::string provenance;      // grid / seed / tool version, free-form

    double upper_at(double gamma) const;
    double lower_at(double gamma) const;
};

struct BoundCheck {
    bool inside = false;
    bool clamped = false;  // gamma fell outside the calibrated range
};

/// Closed-interval band test; boundary values count as inside. A gamma
/// outside the calibrated range is clamped to it and flagged.
BoundCheck bound_check(double g, double gamma, const BoundProfile& bounds);

/// RPM difference over a transversal differential corresponding to a slip
/// residual of g [m/s]: the hub reduction multiplies the wheel-speed
/// difference g/r onto the clutch shaft.
double slip_to_rpm(double g, const VehicleGeometry& geom);

}  // namespace atc
