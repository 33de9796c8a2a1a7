#include "atc/sim.hpp"

#include <cmath>
#include <stdexcept>

#include "atc/errors.hpp"

namespace atc {

double gear_speed(Gear gear) {
    switch (gear) {
        case Gear::f1: return 2.0;
        case Gear::f2: return 2.5;
        case Gear::f3: return 3.0;
    }
    throw std::invalid_argument("unknown gear");
}

double load_mass(Load load) {
    switch (load) {
        case Load::zero: return 0.0;
        case Load::half: return 19500.0;
        case Load::full: return 39000.0;
    }
    throw std::invalid_argument("unknown load");
}

double load_fraction(Load load) { return load_mass(load) / 39000.0; }

bool has_ground_speed(SensorSet set) { return set != SensorSet::basic; }

bool has_wheel_tachs(SensorSet set) { return set == SensorSet::wheel_tach; }

namespace {

void fill_wheel_kinematics(TruthFrame& frame, const ScenarioConfig& config) {
    const VehicleGeometry& g = config.geometry;
    const AxleScrew tractor{frame.v12, frame.omega1, frame.alpha12};
    const AxleScrew bogie_front{frame.v34, frame.omega2, frame.alpha34};

    // The rear bogie axle rides the same rigid trailer body, offset backwards;
    // only the lateral velocity component differs from the front bogie axle.
    const double rear_vx = frame.v34 * std::cos(frame.alpha34);
    const double rear_vy = frame.v34 * std::sin(frame.alpha34) - config.bogie_spacing * frame.omega2;
    const AxleScrew bogie_rear{std::hypot(rear_vx, rear_vy), frame.omega2,
                               std::atan2(rear_vy, rear_vx)};

    const AxleScrew* axles[3] = {&tractor, &bogie_front, &bogie_rear};
    for (int axle = 0; axle < 3; ++axle) {
        for (int side = 0; side < 2; ++side) {
            const auto wv =
                wheel_velocity(*axles[axle], g.c, side == 0 ? Side::left : Side::right);
            frame.wheel_v_long[axle * 2 + side] = wv.speed * std::cos(wv.alpha);
        }
    }
}

}  // namespace

TruthFrame step_truth(const TruthFrame& prev, const SteeringSample& cmd, double dt,
                      const ScenarioConfig& config) {
    if (dt <= 0.0) {
        throw std::invalid_argument("step_truth: dt must be positive");
    }

    TruthFrame next;
    next.t = prev.t + dt;
    next.v12 = gear_speed(config.gear);

    // Pose from the previous frame's rates; velocity leaves the axle midpoint
    // along heading + slip angle.
    next.x = prev.x + prev.v12 * std::cos(prev.heading + prev.alpha12) * dt;
    next.y = prev.y + prev.v12 * std::sin(prev.heading + prev.alpha12) * dt;
    next.heading = prev.heading + prev.omega1 * dt;

    next.gamma = cmd.gamma;
    next.gamma_dot = cmd.gamma_dot;

    if (config.slip_angles_on) {
        const double gain = config.k_alpha * (1.0 + load_fraction(config.load));
        next.alpha12 = -gain * prev.omega1 * next.v12;
        next.alpha34 = -gain * prev.omega2 * next.v12;
    }

    const TwoBodySolution sol = solve_two_body(next.v12, next.alpha12, next.alpha34, next.gamma,
                                               next.gamma_dot, config.geometry);
    next.v34 = sol.v34;
    next.omega1 = sol.omega1;
    next.omega2 = sol.omega2;

    fill_wheel_kinematics(next, config);
    return next;
}

std::array<double, 6> wheel_speeds(const TruthFrame& truth, std::span<const SlipEvent> events,
                                   const VehicleGeometry& geom) {
    std::array<double, 6> omegas{};
    for (int w = 0; w < 6; ++w) {
        double slip = 0.0;
        for (const SlipEvent& ev : events) {
            if (ev.wheel == w + 1 && truth.t >= ev.t_start && truth.t < ev.t_end) {
                slip += ev.magnitude;
            }
        }
        omegas[w] = (truth.wheel_v_long[w] + slip) / geom.r;
    }
    return omegas;
}

SensorEmulator::SensorEmulator(const ScenarioConfig& config) : config_(config), rng_(config.seed) {
    gps_every_ = std::lround(config.gps_period / config.dt);
    if (gps_every_ < 1) gps_every_ = 1;
}

double SensorEmulator::noisy(double value, double sigma) {
    if (!config_.noise.enabled || sigma <= 0.0) return value;
    return value + sigma * gauss_(rng_);
}

SensorFrame SensorEmulator::emulate(const TruthFrame& truth,
                                    const std::array<double, 6>& wheel_omegas,
                                    const LockState& locks) {
    const VehicleGeometry& g = config_.geometry;
    const double ratio = g.gear_ratio();

    SensorFrame frame;
    frame.t = truth.t;

    frame.gamma = noisy(truth.gamma, config_.noise.steering_sigma);
    frame.gamma_dot = (step_ == 0) ? 0.0 : (frame.gamma - prev_gamma_meas_) / config_.dt;
    prev_gamma_meas_ = frame.gamma;

    // A locked pair of shafts assumes the lower of the two speeds.
    std::array<double, 6> w = wheel_omegas;
    if (locks.front) w[0] = w[1] = std::min(w[0], w[1]);
    if (locks.bogie_front) w[2] = w[3] = std::min(w[2], w[3]);
    if (locks.bogie_rear) w[4] = w[5] = std::min(w[4], w[5]);

    double dbx_out = ratio * 0.5 * (w[0] + w[1]);
    double bg_in = ratio * 0.5 * (w[2] + w[3]);
    const double bg_out = ratio * 0.5 * (w[4] + w[5]);
    if (locks.longitudinal) dbx_out = bg_in = std::min(dbx_out, bg_in);
    const double dbx_in = 0.5 * (dbx_out + bg_in);

    frame.omega_dbx_in = noisy(dbx_in, config_.noise.tach_frac * std::abs(dbx_in));
    frame.omega_dbx_out = noisy(dbx_out, config_.noise.tach_frac * std::abs(dbx_out));
    frame.omega_bg_in = noisy(bg_in, config_.noise.tach_frac * std::abs(bg_in));
    frame.omega_bg_out = noisy(bg_out, config_.noise.tach_frac * std::abs(bg_out));

    if (has_wheel_tachs(config_.sensor_set)) {
        std::array<double, 6> meas{};
        for (int i = 0; i < 6; ++i) {
            meas[i] = noisy(w[i], config_.noise.tach_frac * std::abs(w[i]));
        }
        frame.omega_wheel = meas;
    }

    if (has_ground_speed(config_.sensor_set)) {
        if (step_ % gps_every_ == 0) {
            held_ground_ = noisy(truth.v12, config_.noise.ground_sigma);
        }
        frame.v_ground = held_ground_;
    }

    ++step_;
    return frame;
}

ScenarioResult run_scenario(const ScenarioConfig& config, const RoadProfile& road) {
    const double v12 = gear_speed(config.gear);
    const auto steering = road_to_steering(road, v12, config.dt);

    ScenarioResult result;
    result.truth.reserve(steering.size());
    result.sensors.reserve(steering.size());

    SensorEmulator sensors(config);
    const LockState open_locks;

    TruthFrame frame;
    frame.v12 = v12;
    frame.gamma = steering.front().gamma;
    frame.gamma_dot = steering.front().gamma_dot;
    const TwoBodySolution sol =
        solve_two_body(v12, 0.0, 0.0, frame.gamma, frame.gamma_dot, config.geometry);
    frame.v34 = sol.v34;
    frame.omega1 = sol.omega1;
    frame.omega2 = sol.omega2;
    fill_wheel_kinematics(frame, config);

    for (size_t k = 0; k < steering.size(); ++k) {
        if (k > 0) {
            frame = step_truth(frame, steering[k], config.dt, config);
        }
        frame.wheel_omega = wheel_speeds(frame, config.slip_events, config.geometry);
        for (int w = 0; w < 6; ++w) {
            frame.wheel_slip[w] =
                frame.wheel_omega[w] * config.geometry.r - frame.wheel_v_long[w];
        }
        result.truth.push_back(frame);
        result.sensors.push_back(sensors.emulate(frame, frame.wheel_omega, open_locks));
    }
    return result;
}

}  // namespace atc
