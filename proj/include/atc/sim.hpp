#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "atc/geometry.hpp"
#include "atc/kinematics.hpp"
#include "atc/road.hpp"

namespace atc {

// Forward gears and their nominal tractor speeds.
enum class Gear { f1, f2, f3 };
double gear_speed(Gear gear);  // 2.0 / 2.5 / 3.0 m/s

enum class Load { zero, half, full };
double load_mass(Load load);      // 0 / 19500 / 39000 kg
double load_fraction(Load load);  // 0 / 0.5 / 1

// Sensor tiers are cumulative: ground_speed adds the ground-speed channel to
// the basic set, wheel_tach additionally adds the six wheel tachometers.
enum class SensorSet { basic, ground_speed, wheel_tach };
bool has_ground_speed(SensorSet set);
bool has_wheel_tachs(SensorSet set);

/// Injected longitudinal slip on one wheel over a time window. Stands in for
/// terrain-induced slip; the magnitude adds directly to the wheel's
/// non-normalized slip.
struct SlipEvent {
    int wheel = 1;  // 1..6
    double t_start = 0.0;
    double t_end = 0.0;
    double magnitude = 0.0;  // [m/s]
};

struct NoiseConfig {
    bool enabled = true;
    double tach_frac = 0.005;                     // sigma as a fraction of the reading
    double ground_sigma = 0.025;                  // [m/s]
    double steering_sigma = deg_to_rad(0.01);     // [rad]
};

struct ScenarioConfig {
    Gear gear = Gear::f1;
    Load load = Load::zero;
    SensorSet sensor_set = SensorSet::basic;
    std::vector<SlipEvent> slip_events;
    double dt = 0.01;   // [s]; tachometer/steering channels sample every step
    uint64_t seed = 1;
    VehicleGeometry geometry;
    NoiseConfig noise;
    bool slip_angles_on = true;
    double k_alpha = 0.003;      // synthetic slip-angle gain [s^2/m]
    double bogie_spacing = 1.5;  // front to rear bogie axle [m]
    double gps_period = 1.0;     // [s]
};

/// Ground-truth state of the vehicle at one instant. All kinematic fields are
/// mutually consistent: (v34, omega1, omega2) always equal
/// solve_two_body(v12, alpha12, alpha34, gamma, gamma_dot).
struct TruthFrame {
    double t = 0.0;
    double x = 0.0;        // tractor axle midpoint position [m]
    double y = 0.0;
    double heading = 0.0;  // tractor heading [rad]
    double gamma = 0.0;
    double gamma_dot = 0.0;
    double v12 = 0.0;
    double v34 = 0.0;
    double omega1 = 0.0;
    double omega2 = 0.0;
    double alpha12 = 0.0;
    double alpha34 = 0.0;
    std::array<double, 6> wheel_v_long{};  // ground speed along each wheel heading [m/s]
    std::array<double, 6> wheel_slip{};    // true injected slip per wheel [m/s]
    std::array<double, 6> wheel_omega{};   // true wheel angular speeds [rad/s]
};

/// One reading of the sensor network. Driveline tachometer channels are on
/// the shaft side of the gear conversion; optional channels are present only
/// when the scenario's sensor tier provides them.
struct SensorFrame {
    double t = 0.0;
    double gamma = 0.0;
    double gamma_dot = 0.0;  // first difference of the (noisy) gamma channel
    double omega_dbx_in = 0.0;
    double omega_dbx_out = 0.0;
    double omega_bg_in = 0.0;
    double omega_bg_out = 0.0;
    std::optional<double> v_ground;                     // sample-and-hold, 1 Hz
    std::optional<std::array<double, 6>> omega_wheel;
};

/// Which differential locks are currently engaged; affects reported shaft
/// speeds only (a locked pair assumes the lower of the two speeds).
struct LockState {
    bool longitudinal = false;
    bool front = false;        // tractor axle transversal lock
    bool bogie_front = false;  // front bogie axle transversal lock
    bool bogie_rear = false;
};

/// Advances the truth one step: explicit Euler on the pose from the previous
/// frame's rates, slip angles from the synthetic model (proportional to yaw
/// rate, speed and load), then the joint transfer recomputed for the new
/// steering command. Wheel speed fields are left to wheel_speeds().
TruthFrame step_truth(const TruthFrame& prev, const SteeringSample& cmd, double dt,
                      const ScenarioConfig& config);

/// True wheel angular speeds: omega_i = (v_i + s_i) / r with v_i the
/// longitudinal ground speed at wheel i and s_i the summed magnitude of the
/// events active on it at truth.t.
std::array<double, 6> wheel_speeds(const TruthFrame& truth, std::span<const SlipEvent> events,
                                   const VehicleGeometry& geom);

/// Emulates the sensor network frame by frame. Stateful: owns the noise
/// stream, the previous noisy steering sample, and the held ground-speed
/// value.
class SensorEmulator {
public:
    explicit SensorEmulator(const ScenarioConfig& config);

    SensorFrame emulate(const TruthFrame& truth, const std::array<double, 6>& wheel_omegas,
                        const LockState& locks);

private:
    double noisy(double value, double sigma);

    const ScenarioConfig config_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> gauss_{0.0, 1.0};
    long step_ = 0;
    long gps_every_ = 100;
    double prev_gamma_meas_ = 0.0;
    double held_ground_ = 0.0;
};

struct ScenarioResult {
    std::vector<TruthFrame> truth;
    std::vector<SensorFrame> sensors;
};

/// Runs one scenario over a road: deterministic for a given seed, one truth
/// and one sensor frame per dt step, aligned by timestamp. Locks stay open;
/// lock decisions are made downstream by the controller.
ScenarioResult run_scenario(const ScenarioConfig& config, const RoadProfile& road);

}  // namespace atc
