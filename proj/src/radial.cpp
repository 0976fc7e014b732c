#include "hardylab/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include "hardylab/errors.hpp"

namespace hardylab {

namespace odeint = boost::numeric::odeint;

namespace {

// State in s = log r: u, w = r^p u', then the Gram entries of the two solutions.
using State = std::array<double, 7>;

struct RadialSystem {
    int d;
    double p, lambda;
    void operator()(const State& x, State& dx, double s) const {
        const double r = std::exp(s);
        const double a = std::pow(r, 1.0 - p);
        const double rd = std::pow(r, d);
        dx[0] = a * x[1];
        dx[1] = lambda * rd * x[0];
        dx[2] = a * x[3];
        dx[3] = lambda * rd * x[2];
        dx[4] = x[0] * x[0] * rd;
        dx[5] = x[0] * x[2] * rd;
        dx[6] = x[2] * x[2] * rd;
    }
};

// Integrates from s = 0 down to each target in turn, returning states at the targets.
std::vector<State> integrate_to(const RadialSystem& sys, State x, const std::vector<double>& targets, double& reached) {
    auto stepper = odeint::make_controlled(1e-11, 1e-11, odeint::runge_kutta_dopri5<State>());
    std::vector<State> out;
    double s = 0.0;
    reached = 1.0;
    for (double target : targets) {
        while (s > target) {
            const double next = std::max(target, s - 0.25);
            odeint::integrate_adaptive(stepper, sys, x, s, next, -1e-3);
            s = next;
            reached = std::exp(s);
        }
        out.push_back(x);
    }
    return out;
}

}  // namespace

double radial_hardy_constant(const RadialProblem& problem) {
    const double p = problem.p();
    if (p < 0.0) throw ArgumentError("radial weight exponent p = d - 1 + delta must be nonnegative");
    if (std::abs(p - 1.0) < 1e-14) throw CriterionError("p = 1 is logarithmically critical; the constant is 0");
    return std::abs(p - 1.0) / 2.0;
}

std::string weyl_name(WeylClass c) { return c == WeylClass::limit_point ? "limit_point" : "limit_circle"; }

WeylClass weyl_classify(int d, double delta) {
    if (d < 1) throw ArgumentError("dimension must be at least 1");
    // u1 = 1 is always square integrable near 0. u2 = r^(2-d-delta), or log r when d + delta = 2,
    // has |u2|^2 r^(d-1) ~ r^(3-d-2 delta) up to logarithms.
    if (std::abs(d + delta - 2.0) < 1e-14) return WeylClass::limit_circle;
    const double exponent = 2.0 * (2.0 - d - delta) + d - 1.0;
    return exponent > -1.0 ? WeylClass::limit_circle : WeylClass::limit_point;
}

OdeReport ode_integrability_check(int d, double delta, double lambda, double r_min) {
    if (!(r_min >= 1e-6 && r_min <= 1e-2)) throw ArgumentError("r_min must lie in [1e-6, 1e-2]");
    if (!(lambda > 0.0)) throw ArgumentError("lambda must be positive");
    OdeReport rep;
    rep.expected = weyl_classify(d, delta);
    const RadialSystem sys{d, d - 1 + delta, lambda};
    State x0{1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0};
    std::vector<State> states;
    try {
        states = integrate_to(sys, x0, {std::log(r_min), std::log(r_min / 10.0)}, rep.reached_r);
    } catch (const std::exception&) {
        rep.partial = true;
        return rep;
    }
    // Integration runs toward smaller s, so the accumulated masses are negative.
    auto gram = [](const State& x) {
        Eigen::Matrix2d G;
        G << -x[4], -x[5], -x[5], -x[6];
        return G;
    };
    Eigen::Matrix2d G1 = gram(states[0]), G10 = gram(states[1]);
    rep.u1_mass = G1(0, 0);
    rep.u2_mass = G1(1, 1);
    const Eigen::Vector2d sc(1.0 / std::sqrt(G1(0, 0)), 1.0 / std::sqrt(G1(1, 1)));
    G1 = sc.asDiagonal() * G1 * sc.asDiagonal();
    G10 = sc.asDiagonal() * G10 * sc.asDiagonal();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> ges(G10, G1);
    rep.growth_small = ges.eigenvalues()[0];
    rep.growth_large = ges.eigenvalues()[1];
    constexpr double kBoundedGrowth = 1.25;
    rep.bounded_count = (rep.growth_small < kBoundedGrowth) + (rep.growth_large < kBoundedGrowth);
    const int expected_count = rep.expected == WeylClass::limit_circle ? 2 : 1;
    rep.classification_consistent = rep.bounded_count == expected_count;
    return rep;
}

std::vector<double> radial_solution(int d, double delta, double lambda, double u0, double w0,
                                    const std::vector<double>& radii) {
    const RadialSystem sys{d, d - 1 + delta, lambda};
    std::vector<double> targets;
    for (double r : radii) {
        if (!(r > 0.0 && r <= 1.0)) throw ArgumentError("radii must lie in (0, 1]");
        if (!targets.empty() && std::log(r) > targets.back()) throw ArgumentError("radii must decrease");
        targets.push_back(std::log(r));
    }
    double reached = 1.0;
    const auto states = integrate_to(sys, State{u0, w0, 0.0, 0.0, 0.0, 0.0, 0.0}, targets, reached);
    std::vector<double> out;
    for (const State& s : states) out.push_back(s[0]);
    return out;
}

}  // namespace hardylab
