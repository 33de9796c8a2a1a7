#pragma once

#include <cmath>
#include <numbers>

namespace atc {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// rad/s on a shaft to revolutions per minute.
constexpr double rad_s_to_rpm(double w) { return w * 60.0 / (2.0 * kPi); }
constexpr double rpm_to_rad_s(double rpm) { return rpm * 2.0 * kPi / 60.0; }

}  // namespace atc
