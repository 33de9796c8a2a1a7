#pragma once

#include <span>
#include <string>
#include <vector>

#include "atc/sim.hpp"

namespace atc {

/// Mean absolute error between paired series.
double d1(std::span<const double> x, std::span<const double> xhat);

/// Maximum absolute error between paired series.
double d_inf(std::span<const double> x, std::span<const double> xhat);

/// Which inputs the trailer-speed estimator is allowed to use; the remaining
/// ones are nulled. The three studied variants are (false,false),
/// (true,false) and (true,true).
struct ModelVariant {
    bool use_gamma_dot = false;
    bool use_slip_angles = false;
};

std::string variant_name(const ModelVariant& v);

/// Trailer-speed estimate from the closed-form joint transfer with the
/// variant's nulled inputs, fed from truth channels.
double estimate_v34(const TruthFrame& truth, const ModelVariant& variant,
                    const VehicleGeometry& geom);

struct ErrorReport {
    Gear gear = Gear::f1;
    Load load = Load::zero;
    ModelVariant variant;
    double d1_cms = 0.0;
    double d_inf_cms = 0.0;
    std::size_t n_samples = 0;
};

/// Runs the 3 gears x 3 loads grid with synthetic slip angles on and scores
/// each estimator variant against the true trailer speed, in cm/s. Samples
/// with |gamma| below `min_gamma` are excluded (straight stretches carry no
/// information about the turning model).
std::vector<ErrorReport> table1_experiment(const ScenarioConfig& base, const RoadProfile& road,
                                           std::span<const ModelVariant> variants,
                                           double min_gamma = deg_to_rad(1.0));

struct TrendCheck {
    bool steady_vs_transient = false;  // steady-state error at least twice the transient one
    bool slip_angles_help = false;     // alpha-aware variant never worse
    bool monotone_in_gear = false;     // error grows with speed within a variant
    std::string detail;

    bool all() const { return steady_vs_transient && slip_angles_help && monotone_in_gear; }
};

/// Qualitative trends the experiment must reproduce, evaluated per grid cell.
TrendCheck check_trends(std::span<const ErrorReport> reports);

}  // namespace atc
