#include "atc/slip.hpp"

#include <cmath>

#include "atc/errors.hpp"

namespace atc {

double lambda_l(const WheelSlipState& s) {
    const double circumference = s.omega * s.r;
    const double ground = s.v * std::cos(s.alpha);
    if (circumference == 0.0 && ground == 0.0) {
        throw UndefinedSlip("normalized slip is 0/0 for a stationary wheel");
    }
    if (circumference >= ground) {
        return (circumference - ground) / circumference;
    }
    return (ground - circumference) / ground;
}

double s_l(const WheelSlipState& s) { return s.omega * s.r - s.v * std::cos(s.alpha); }

std::array<SlipVector, 3> undetectable_basis() {
    return {SlipVector{{1.0, 1.0, 0.0, 0.0}}, SlipVector{{0.0, 0.0, 1.0, 1.0}},
            SlipVector{{-1.0, 1.0, -1.0, 1.0}}};
}

double detect_component(const SlipVector& s) { return s.s[0] - s.s[1] - s.s[2] + s.s[3]; }

}  // namespace atc
