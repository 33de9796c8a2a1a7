#pragma once

#include <cstddef>
#include <deque>
#include <string>

#include "atc/geometry.hpp"
#include "atc/sim.hpp"

namespace atc {

enum class DetectorId { basic, ground_front, ground_bogie, wheel_tach };

std::string detector_name(DetectorId id);
DetectorId detector_from_name(const std::string& name);

/// Residual of the driveline-only relation between the bogie input shaft and
/// the dropbox output shaft, with slip angles at their nominal zero [m/s].
/// Zero in the absence of slip; drifts when tractor or front bogie wheels
/// slip (a single-wheel slip appears at half magnitude through the axle
/// mean).
double g_basic(const SensorFrame& frame, const VehicleGeometry& geom);

/// Tire circumference speed of the front mean wheel minus the measured
/// ground speed [m/s]. Positive under driving slip, negative while braking.
double g_ground_front(const SensorFrame& frame, const VehicleGeometry& geom);

/// Same comparison for the front bogie axle, with the ground speed carried
/// across the steering joint [m/s].
double g_ground_bogie(const SensorFrame& frame, const VehicleGeometry& geom);

/// Wheel-tachometer residual (w1 - w2 - w3 + w4)*r + 2*c*gamma_dot [m/s].
/// Equals s1 - s2 - s3 + s4 independently of the slip angles, so it is blind
/// exactly on the span of undetectable_basis().
double g_wheel_tach(const SensorFrame& frame, const VehicleGeometry& geom);

/// Dispatch on detector id.
double residual(DetectorId id, const SensorFrame& frame, const VehicleGeometry& geom);

/// Trailing moving average over the last `window` samples; during warm-up the
/// mean runs over whatever history exists, so the first output equals the
/// first input.
class MovingAverage {
public:
    explicit MovingAverage(std::size_t window = 5);

    double push(double x);
    void reset();

private:
    std::size_t window_;
    std::deque<double> buf_;
    double sum_ = 0.0;
};

}  // namespace atc
