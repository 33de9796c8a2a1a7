#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "atc/bounds.hpp"
#include "atc/controller.hpp"
#include "atc/detectors.hpp"

namespace atc {

struct DetectOptions {
    bool filter = false;  // run the residual through the 5-sample mean
    ControllerConfig controller;
    VehicleGeometry geometry;
};

struct DetectRecord {
    double t = 0.0;
    ControlMode mode = ControlMode::monitoring;
    LockCommand command;
    double g = 0.0;  // residual after optional filtering
    double lower = 0.0;
    double upper = 0.0;
    double delta_omega_rpm = 0.0;
    bool outside = false;
    double odometer = 0.0;  // cumulative travelled distance [m]
};

struct DetectSummary {
    std::size_t engagements = 0;
    std::size_t disengagements = 0;
    std::optional<double> first_outside_t;
    std::optional<double> first_engage_t;
    std::vector<DetectRecord> trace;  // one record per frame
};

/// Runs one detector plus the lock controller over a sensor stream. The
/// clutch speed difference is taken from the richest channels the stream
/// carries (individual wheel pairs when wheel tachometers are present, the
/// longitudinal shaft pair otherwise) and the travelled distance from the
/// dropbox output shaft.
DetectSummary run_detector(std::span<const SensorFrame> frames, const BoundProfile& profile,
                           const DetectOptions& options);

/// Event log: one manifest record followed by one record per frame.
std::string detect_ndjson(const DetectSummary& summary, const BoundProfile& profile,
                          uint64_t seed);

}  // namespace atc
