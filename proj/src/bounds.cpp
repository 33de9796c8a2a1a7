#include "atc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "atc/units.hpp"

namespace atc {

namespace {

double interp(const std::vector<Breakpoint>& pts, double gamma) {
    if (pts.empty()) {
        throw std::logic_error("piecewise-linear bound has no breakpoints");
    }
    if (gamma <= pts.front().gamma) return pts.front().value;
    if (gamma >= pts.back().gamma) return pts.back().value;
    auto hi = std::upper_bound(pts.begin(), pts.end(), gamma,
                               [](double g, const Breakpoint& b) { return g < b.gamma; });
    const auto lo = hi - 1;
    const double span = hi->gamma - lo->gamma;
    const double w = (span > 0.0) ? (gamma - lo->gamma) / span : 0.0;
    return lo->value + w * (hi->value - lo->value);
}

}  // namespace

double BoundProfile::upper_at(double gamma) const {
    const double base = (kind == BoundKind::quadratic) ? upper_coeffs.eval(gamma)
                                                       : interp(upper_pts, gamma);
    return base + upper_margin;
}

double BoundProfile::lower_at(double gamma) const {
    const double base = (kind == BoundKind::quadratic) ? lower_coeffs.eval(gamma)
                                                       : interp(lower_pts, gamma);
    return base - lower_margin;
}

BoundCheck bound_check(double g, double gamma, const BoundProfile& bounds) {
    BoundCheck out;
    double gm = gamma;
    if (gm < bounds.gamma_min) {
        gm = bounds.gamma_min;
        out.clamped = true;
    } else if (gm > bounds.gamma_max) {
        gm = bounds.gamma_max;
        out.clamped = true;
    }
    out.inside = bounds.lower_at(gm) <= g && g <= bounds.upper_at(gm);
    return out;
}

double slip_to_rpm(double g, const VehicleGeometry& geom) {
    return geom.i_hub * g * 60.0 / (2.0 * kPi * geom.r);
}

}  // namespace atc
