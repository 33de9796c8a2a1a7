#pragma once

#include <stdexcept>
#include <string>

namespace atc {

// Kinematic closed forms share a denominator that vanishes only for folded-back
// geometries no physical hauler can reach.
class DegenerateDenominator : public std::domain_error {
public:
    explicit DegenerateDenominator(const std::string& msg) : std::domain_error(msg) {}
};

// A chain-solver linear system is too ill-conditioned to trust.
class SingularSystem : public std::runtime_error {
public:
    explicit SingularSystem(const std::string& msg) : std::runtime_error(msg) {}
};

// Normalized slip ratio is 0/0: stationary wheel on stationary ground.
class UndefinedSlip : public std::domain_error {
public:
    explicit UndefinedSlip(const std::string& msg) : std::domain_error(msg) {}
};

// A detector was asked for a sensor channel the frame does not carry.
class MissingSensor : public std::runtime_error {
public:
    explicit MissingSensor(const std::string& msg) : std::runtime_error(msg) {}
};

// A road segment is too short to complete its steering ramp.
class InfeasibleRoad : public std::invalid_argument {
public:
    explicit InfeasibleRoad(const std::string& msg) : std::invalid_argument(msg) {}
};

// Tuning was attempted on an empty point cloud.
class EmptyRange : public std::invalid_argument {
public:
    explicit EmptyRange(const std::string& msg) : std::invalid_argument(msg) {}
};

// Polynomial fit input does not span enough steering angles.
class RankDeficient : public std::runtime_error {
public:
    explicit RankDeficient(const std::string& msg) : std::runtime_error(msg) {}
};

// Sensor stream and bound profile were produced for different detectors.
class DetectorMismatch : public std::runtime_error {
public:
    explicit DetectorMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

class LengthMismatch : public std::invalid_argument {
public:
    explicit LengthMismatch(const std::string& msg) : std::invalid_argument(msg) {}
};

class EmptySeries : public std::invalid_argument {
public:
    explicit EmptySeries(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace atc
