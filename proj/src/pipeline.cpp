#include "atc/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

#include "atc/version.hpp"

namespace atc {

namespace {

// Speed difference over the dog clutch that gets engaged first, in RPM.
// With wheel tachometers that is the front transversal clutch, whose faces
// spin at the hub reduction times the wheel speeds; a slipping inner wheel
// actually closes this gap during a turn. Without wheel tachometers only the
// longitudinal clutch (dropbox output vs. bogie input shaft) is observable.
double clutch_delta_rpm(const SensorFrame& frame, const VehicleGeometry& geom) {
    if (frame.omega_wheel.has_value()) {
        const auto& w = *frame.omega_wheel;
        return rad_s_to_rpm(geom.i_hub * (w[0] - w[1]));
    }
    return rad_s_to_rpm(frame.omega_dbx_out - frame.omega_bg_in);
}

}  // namespace

DetectSummary run_detector(std::span<const SensorFrame> frames, const BoundProfile& profile,
                           const DetectOptions& options) {
    DetectSummary summary;
    summary.trace.reserve(frames.size());

    ControllerState state;
    MovingAverage ma(5);
    double prev_t = frames.empty() ? 0.0 : frames.front().t;
    double odometer = 0.0;

    for (size_t k = 0; k < frames.size(); ++k) {
        const SensorFrame& frame = frames[k];
        const double dt = (k == 0) ? 0.01 : std::max(frame.t - prev_t, 1e-9);
        prev_t = frame.t;

        double g = residual(profile.detector, frame, options.geometry);
        if (options.filter) g = ma.push(g);

        const double speed = frame.omega_dbx_out * options.geometry.r /
                             options.geometry.gear_ratio();
        odometer += std::abs(speed) * dt;
        const double delta_rpm = clutch_delta_rpm(frame, options.geometry);

        const ResidualReading reading{g, frame.gamma, &profile};
        const auto step = controller_step(state, std::span(&reading, 1), delta_rpm, dt,
                                          std::abs(speed) * dt, options.controller);
        state = step.state;

        DetectRecord rec;
        rec.t = frame.t;
        rec.mode = state.mode;
        rec.command = step.command;
        rec.g = g;
        rec.lower = profile.lower_at(frame.gamma);
        rec.upper = profile.upper_at(frame.gamma);
        rec.delta_omega_rpm = step.effective_delta_rpm;
        rec.outside = step.outside;
        rec.odometer = odometer;
        summary.trace.push_back(rec);

        if (step.outside && !summary.first_outside_t) summary.first_outside_t = frame.t;
        if (step.command.action == LockAction::engage) {
            ++summary.engagements;
            if (!summary.first_engage_t) summary.first_engage_t = frame.t;
        }
        if (step.command.action == LockAction::disengage) ++summary.disengagements;
    }
    return summary;
}

std::string detect_ndjson(const DetectSummary& summary, const BoundProfile& profile,
                          uint64_t seed) {
    std::string out;
    nlohmann::json manifest;
    manifest["record"] = "manifest";
    manifest["tool"] = kToolName;
    manifest["version"] = kToolVersion;
    manifest["seed"] = seed;
    manifest["detector"] = detector_name(profile.detector);
    manifest["filtered"] = profile.filtered;
    out += manifest.dump();
    out += '\n';

    for (const DetectRecord& rec : summary.trace) {
        nlohmann::json j;
        j["record"] = "step";
        j["t"] = rec.t;
        j["mode"] = control_mode_name(rec.mode);
        j["action"] = lock_action_name(rec.command.action);
        if (rec.command.action != LockAction::none) j["target"] = rec.command.target;
        j["g"] = rec.g;
        j["l"] = rec.lower;
        j["u"] = rec.upper;
        j["delta_omega_rpm"] = rec.delta_omega_rpm;
        out += j.dump();
        out += '\n';
    }
    return out;
}

}  // namespace atc
