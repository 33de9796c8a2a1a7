#include "atc/kinematics.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>
#include <string>

#include "atc/errors.hpp"

namespace atc {

namespace {

double denom(double alpha34, double gamma, const VehicleGeometry& g) {
    const double d = g.l1 * std::cos(alpha34 - gamma) + g.l2 * std::cos(alpha34);
    if (std::abs(d) < kDenominatorEps) {
        throw DegenerateDenominator("turning-radius denominator vanished at gamma=" +
                                    std::to_string(gamma));
    }
    return d;
}

}  // namespace

double p_fn(double alpha12, double alpha34, double gamma, const VehicleGeometry& geom) {
    return std::sin(gamma + alpha12 - alpha34) / denom(alpha34, gamma, geom);
}

double q_fn(double alpha12, double alpha34, double gamma, const VehicleGeometry& geom) {
    return (geom.l2 * std::cos(alpha12 + gamma) + geom.l1 * std::cos(alpha12)) /
           denom(alpha34, gamma, geom);
}

TwoBodySolution solve_two_body(double v12, double alpha12, double alpha34, double gamma,
                               double gamma_dot, const VehicleGeometry& geom) {
    TwoBodySolution out;
    const double p_v = p_fn(alpha12, alpha34, gamma, geom);
    out.v34 = q_fn(alpha12, alpha34, gamma, geom) * v12 +
              q_fn(-kPi / 2.0, alpha34, gamma, geom) * gamma_dot * geom.l1;
    out.omega1 = p_v * v12 + p_fn(-gamma + kPi / 2.0, alpha34, gamma, geom) * gamma_dot * geom.l2;
    out.omega2 = p_v * v12 + p_fn(-kPi / 2.0, alpha34, gamma, geom) * gamma_dot * geom.l1;
    return out;
}

std::vector<AxleScrew> solve_chain_numeric(double v1, std::span<const double> alphas,
                                           std::span<const JointConfig> joints) {
    if (joints.empty()) {
        throw std::invalid_argument("solve_chain_numeric: need at least one joint");
    }
    if (alphas.size() != joints.size() + 1) {
        throw std::invalid_argument("solve_chain_numeric: need one slip angle per axle");
    }

    std::vector<AxleScrew> screws(alphas.size());
    screws[0].v = v1;
    screws[0].alpha = alphas[0];

    for (size_t k = 0; k < joints.size(); ++k) {
        const JointConfig& j = joints[k];
        const double a_front = alphas[k];
        const double a_rear = alphas[k + 1];

        Eigen::Matrix2d m_a;
        m_a << std::cos(a_front), 0.0, std::sin(a_front), -j.a;
        Eigen::Matrix2d m_b;
        m_b << std::cos(a_rear), 0.0, std::sin(a_rear), j.b;
        Eigen::Matrix2d rot;
        rot << std::cos(j.gamma), -std::sin(j.gamma), std::sin(j.gamma), std::cos(j.gamma);

        // Substitute Omega_{k+1} = Omega_k - gamma_dot into the hinge match and
        // solve for x = (v_{k+1}, Omega_k).
        Eigen::Matrix2d sys;
        sys.col(0) = m_b.col(0);
        sys.col(1) = m_b.col(1) - rot * m_a.col(1);
        const Eigen::Vector2d rhs = rot * m_a.col(0) * screws[k].v + m_b.col(1) * j.gamma_dot;

        const Eigen::JacobiSVD<Eigen::Matrix2d> svd(sys, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const double smin = svd.singularValues()(1);
        const double smax = svd.singularValues()(0);
        if (!(smin > 0.0) || smax / smin > 1e12) {
            throw SingularSystem("chain joint " + std::to_string(k) +
                                 " produced an ill-conditioned system");
        }
        const Eigen::Vector2d x = svd.solve(rhs);

        screws[k].omega = x(1);
        screws[k + 1].v = x(0);
        screws[k + 1].omega = x(1) - j.gamma_dot;
        screws[k + 1].alpha = a_rear;
    }
    return screws;
}

WheelVelocity wheel_velocity(const AxleScrew& screw, double c, Side side) {
    const double lateral = (side == Side::right) ? c : -c;
    const double vx = screw.v * std::cos(screw.alpha) + lateral * screw.omega;
    const double vy = screw.v * std::sin(screw.alpha);
    WheelVelocity out;
    out.speed = std::hypot(vx, vy);
    out.alpha = std::atan2(vy, vx);
    return out;
}

}  // namespace atc
