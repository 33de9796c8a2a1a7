#include "atc/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace atc {

std::string control_mode_name(ControlMode mode) {
    switch (mode) {
        case ControlMode::monitoring: return "monitoring";
        case ControlMode::braking_to_sync: return "braking_to_sync";
        case ControlMode::locked: return "locked";
    }
    throw std::invalid_argument("unknown control mode");
}

std::string lock_action_name(LockAction action) {
    switch (action) {
        case LockAction::none: return "none";
        case LockAction::brake: return "brake";
        case LockAction::engage: return "engage";
        case LockAction::disengage: return "disengage";
    }
    throw std::invalid_argument("unknown lock action");
}

ControllerStep controller_step(const ControllerState& state,
                               std::span<const ResidualReading> readings,
                               double clutch_delta_omega_rpm, double dt,
                               double distance_increment, const ControllerConfig& config) {
    if (dt <= 0.0) {
        throw std::invalid_argument("controller_step: dt must be positive");
    }

    ControllerStep out;
    out.state = state;

    bool outside = false;
    for (const ResidualReading& rr : readings) {
        if (rr.bounds == nullptr) continue;
        if (!bound_check(rr.g, rr.gamma, *rr.bounds).inside) {
            outside = true;
            break;
        }
    }
    out.outside = outside;
    out.effective_delta_rpm = std::abs(clutch_delta_omega_rpm);

    switch (state.mode) {
        case ControlMode::monitoring: {
            if (!outside) break;
            if (out.effective_delta_rpm <= config.omega_safe_rpm) {
                out.state.mode = ControlMode::locked;
                out.state.time_locked = 0.0;
                out.state.dist_locked = 0.0;
                out.command = {LockAction::engage, config.engage_locks};
            } else {
                out.state.mode = ControlMode::braking_to_sync;
                out.state.brake_elapsed = 0.0;
                out.command = {LockAction::brake,
                               clutch_delta_omega_rpm >= 0.0 ? "front_shaft" : "bogie_shaft"};
            }
            break;
        }
        case ControlMode::braking_to_sync: {
            out.state.brake_elapsed = state.brake_elapsed + dt;
            const double braked = std::max(
                0.0, out.effective_delta_rpm - config.brake_rate_rpm_s * out.state.brake_elapsed);
            out.effective_delta_rpm = braked;
            if (braked <= config.omega_safe_rpm) {
                out.state.mode = ControlMode::locked;
                out.state.time_locked = 0.0;
                out.state.dist_locked = 0.0;
                out.state.brake_elapsed = 0.0;
                out.command = {LockAction::engage, config.engage_locks};
            } else {
                out.command = {LockAction::brake,
                               clutch_delta_omega_rpm >= 0.0 ? "front_shaft" : "bogie_shaft"};
            }
            break;
        }
        case ControlMode::locked: {
            out.state.time_locked = state.time_locked + dt;
            out.state.dist_locked = state.dist_locked + distance_increment;
            const bool held_long_enough = out.state.time_locked >= config.delta_t &&
                                          out.state.dist_locked >= config.delta_d;
            if (held_long_enough && !outside) {
                out.state.mode = ControlMode::monitoring;
                out.state.time_locked = 0.0;
                out.state.dist_locked = 0.0;
                out.command = {LockAction::disengage, config.engage_locks};
            }
            break;
        }
    }
    return out;
}

}  // namespace atc
