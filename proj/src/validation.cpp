#include "atc/validation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "atc/errors.hpp"
#include "atc/kinematics.hpp"

namespace atc {

namespace {

void check_series(std::span<const double> x, std::span<const double> xhat) {
    if (x.size() != xhat.size()) {
        throw LengthMismatch("series lengths differ");
    }
    if (x.empty()) {
        throw EmptySeries("series are empty");
    }
}

}  // namespace

double d1(std::span<const double> x, std::span<const double> xhat) {
    check_series(x, xhat);
    double sum = 0.0;
    for (size_t k = 0; k < x.size(); ++k) sum += std::abs(x[k] - xhat[k]);
    return sum / static_cast<double>(x.size());
}

double d_inf(std::span<const double> x, std::span<const double> xhat) {
    check_series(x, xhat);
    double worst = 0.0;
    for (size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(x[k] - xhat[k]));
    return worst;
}

std::string variant_name(const ModelVariant& v) {
    std::string name = v.use_gamma_dot ? "transient" : "steady_state";
    name += v.use_slip_angles ? "_alpha" : "_alpha0";
    return name;
}

double estimate_v34(const TruthFrame& truth, const ModelVariant& variant,
                    const VehicleGeometry& geom) {
    const double a12 = variant.use_slip_angles ? truth.alpha12 : 0.0;
    const double a34 = variant.use_slip_angles ? truth.alpha34 : 0.0;
    const double gdot = variant.use_gamma_dot ? truth.gamma_dot : 0.0;
    return q_fn(a12, a34, truth.gamma, geom) * truth.v12 +
           q_fn(-kPi / 2.0, a34, truth.gamma, geom) * gdot * geom.l1;
}

std::vector<ErrorReport> table1_experiment(const ScenarioConfig& base, const RoadProfile& road,
                                           std::span<const ModelVariant> variants,
                                           double min_gamma) {
    std::vector<ErrorReport> reports;
    for (Gear gear : {Gear::f1, Gear::f2, Gear::f3}) {
        for (Load load : {Load::zero, Load::half, Load::full}) {
            ScenarioConfig cfg = base;
            cfg.gear = gear;
            cfg.load = load;
            cfg.slip_events.clear();
            cfg.slip_angles_on = true;
            const auto result = run_scenario(cfg, road);

            std::vector<double> truth_v34;
            std::vector<const TruthFrame*> kept;
            for (const TruthFrame& f : result.truth) {
                if (std::abs(f.gamma) < min_gamma) continue;
                truth_v34.push_back(f.v34);
                kept.push_back(&f);
            }

            for (const ModelVariant& variant : variants) {
                std::vector<double> est;
                est.reserve(kept.size());
                for (const TruthFrame* f : kept) {
                    est.push_back(estimate_v34(*f, variant, cfg.geometry));
                }
                ErrorReport rep;
                rep.gear = gear;
                rep.load = load;
                rep.variant = variant;
                if (!est.empty()) {
                    rep.d1_cms = 100.0 * d1(truth_v34, est);
                    rep.d_inf_cms = 100.0 * d_inf(truth_v34, est);
                }
                rep.n_samples = est.size();
                reports.push_back(rep);
            }
        }
    }
    return reports;
}

TrendCheck check_trends(std::span<const ErrorReport> reports) {
    TrendCheck out;
    out.steady_vs_transient = true;
    out.slip_angles_help = true;
    out.monotone_in_gear = true;
    std::ostringstream detail;

    const auto key = [](Gear gear, Load load) {
        return static_cast<int>(gear) * 3 + static_cast<int>(load);
    };
    std::map<int, double> d1_steady, d1_transient, d1_alpha;
    for (const ErrorReport& r : reports) {
        const int cell = key(r.gear, r.load);
        if (!r.variant.use_gamma_dot && !r.variant.use_slip_angles) d1_steady[cell] = r.d1_cms;
        if (r.variant.use_gamma_dot && !r.variant.use_slip_angles) d1_transient[cell] = r.d1_cms;
        if (r.variant.use_gamma_dot && r.variant.use_slip_angles) d1_alpha[cell] = r.d1_cms;
    }

    for (Load load : {Load::zero, Load::half, Load::full}) {
        double prev_steady = -1.0, prev_transient = -1.0, prev_alpha = -1.0;
        for (Gear gear : {Gear::f1, Gear::f2, Gear::f3}) {
            const int cell = key(gear, load);
            const double ds = d1_steady.at(cell);
            const double dt = d1_transient.at(cell);
            const double da = d1_alpha.at(cell);

            if (ds < 2.0 * dt) {
                out.steady_vs_transient = false;
                detail << "cell g" << static_cast<int>(gear) << "/l" << static_cast<int>(load)
                       << ": steady " << ds << " < 2x transient " << dt << "; ";
            }
            if (da > dt + 1e-12) {
                out.slip_angles_help = false;
                detail << "cell g" << static_cast<int>(gear) << "/l" << static_cast<int>(load)
                       << ": alpha variant worse (" << da << " > " << dt << "); ";
            }
            // Non-strict growth with a whisker of float tolerance; the exact
            // variant sits at zero for every gear.
            const double eps = 1e-9;
            if (ds + eps < prev_steady || dt + eps < prev_transient || da + eps < prev_alpha) {
                out.monotone_in_gear = false;
                detail << "cell g" << static_cast<int>(gear) << "/l" << static_cast<int>(load)
                       << ": error shrank with gear; ";
            }
            prev_steady = ds;
            prev_transient = dt;
            prev_alpha = da;
        }
    }
    out.detail = detail.str();
    return out;
}

}  // namespace atc
