#pragma once

#include <span>
#include <string>

#include "atc/bounds.hpp"

namespace atc {

enum class ControlMode { monitoring, braking_to_sync, locked };

std::string control_mode_name(ControlMode mode);

enum class LockAction { none, brake, engage, disengage };

std::string lock_action_name(LockAction action);

/// Command emitted by one controller step. `target` names the braked shaft
/// for brake commands and the lock set for engage/disengage.
struct LockCommand {
    LockAction action = LockAction::none;
    std::string target;
};

struct ControllerConfig {
    double delta_t = 5.0;           // minimum locked time before unlock [s]
    double delta_d = 10.0;          // minimum locked distance before unlock [m]
    double omega_safe_rpm = 50.0;   // max clutch speed difference for engagement
    double brake_rate_rpm_s = 30.0; // modeled brake effect on the faster shaft
    std::string engage_locks = "longitudinal+front";
};

struct ControllerState {
    ControlMode mode = ControlMode::monitoring;
    double time_locked = 0.0;    // [s]
    double dist_locked = 0.0;    // [m]
    double brake_elapsed = 0.0;  // [s] spent in braking_to_sync
};

/// One filtered residual paired with the band it is checked against.
struct ResidualReading {
    double g = 0.0;
    double gamma = 0.0;
    const BoundProfile* bounds = nullptr;
};

struct ControllerStep {
    ControllerState state;
    LockCommand command;
    bool outside = false;           // any residual outside its band this step
    double effective_delta_rpm = 0.0;  // clutch difference after brake model
};

/// Advances the lock state machine one sample.
///
/// monitoring: an out-of-band residual triggers engagement if the clutch
/// speed difference is within the safe window, otherwise braking of the
/// faster shaft. braking_to_sync: the brake is modeled as an ideal rate
/// limiter; engagement follows once the modeled difference is safe. locked:
/// disengage only after the vehicle has stayed locked for delta_t seconds
/// AND delta_d meters and the residuals are back inside their bands.
ControllerStep controller_step(const ControllerState& state,
                               std::span<const ResidualReading> readings,
                               double clutch_delta_omega_rpm, double dt,
                               double distance_increment, const ControllerConfig& config);

}  // namespace atc
