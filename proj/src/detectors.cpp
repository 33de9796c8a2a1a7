#include "atc/detectors.hpp"

#include <stdexcept>

#include "atc/errors.hpp"
#include "atc/kinematics.hpp"

namespace atc {

std::string detector_name(DetectorId id) {
    switch (id) {
        case DetectorId::basic: return "basic";
        case DetectorId::ground_front: return "ground_front";
        case DetectorId::ground_bogie: return "ground_bogie";
        case DetectorId::wheel_tach: return "wheel_tach";
    }
    throw std::invalid_argument("unknown detector id");
}

DetectorId detector_from_name(const std::string& name) {
    if (name == "basic") return DetectorId::basic;
    if (name == "ground_front" || name == "ground") return DetectorId::ground_front;
    if (name == "ground_bogie") return DetectorId::ground_bogie;
    if (name == "wheel_tach" || name == "wheeltach") return DetectorId::wheel_tach;
    throw std::invalid_argument("unknown detector name: " + name);
}

double g_basic(const SensorFrame& frame, const VehicleGeometry& geom) {
    const double r_over_i = geom.r / geom.gear_ratio();
    return frame.omega_bg_in * r_over_i -
           q_fn(0.0, 0.0, frame.gamma, geom) * frame.omega_dbx_out * r_over_i -
           q_fn(-kPi / 2.0, 0.0, frame.gamma, geom) * geom.l1 * frame.gamma_dot;
}

double g_ground_front(const SensorFrame& frame, const VehicleGeometry& geom) {
    if (!frame.v_ground.has_value()) {
        throw MissingSensor("ground-speed channel required");
    }
    return frame.omega_dbx_out * geom.r / geom.gear_ratio() - *frame.v_ground;
}

double g_ground_bogie(const SensorFrame& frame, const VehicleGeometry& geom) {
    if (!frame.v_ground.has_value()) {
        throw MissingSensor("ground-speed channel required");
    }
    return frame.omega_bg_in * geom.r / geom.gear_ratio() -
           q_fn(0.0, 0.0, frame.gamma, geom) * *frame.v_ground -
           q_fn(-kPi / 2.0, 0.0, frame.gamma, geom) * frame.gamma_dot * geom.l1;
}

double g_wheel_tach(const SensorFrame& frame, const VehicleGeometry& geom) {
    if (!frame.omega_wheel.has_value()) {
        throw MissingSensor("wheel tachometers required");
    }
    const auto& w = *frame.omega_wheel;
    return (w[0] - w[1] - w[2] + w[3]) * geom.r + 2.0 * geom.c * frame.gamma_dot;
}

double residual(DetectorId id, const SensorFrame& frame, const VehicleGeometry& geom) {
    switch (id) {
        case DetectorId::basic: return g_basic(frame, geom);
        case DetectorId::ground_front: return g_ground_front(frame, geom);
        case DetectorId::ground_bogie: return g_ground_bogie(frame, geom);
        case DetectorId::wheel_tach: return g_wheel_tach(frame, geom);
    }
    throw std::invalid_argument("unknown detector id");
}

MovingAverage::MovingAverage(std::size_t window) : window_(window == 0 ? 1 : window) {}

double MovingAverage::push(double x) {
    buf_.push_back(x);
    sum_ += x;
    if (buf_.size() > window_) {
        sum_ -= buf_.front();
        buf_.pop_front();
    }
    return sum_ / static_cast<double>(buf_.size());
}

void MovingAverage::reset() {
    buf_.clear();
    sum_ = 0.0;
}

}  // namespace atc
