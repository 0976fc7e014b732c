#pragma once

#include <string>
#include <vector>

namespace hardylab {

// Radial operator -r^(1-d) (r^(d-1+delta) u')' on (0, r_max) in L2(r^(d-1) dr).
struct RadialProblem {
    int d = 2;
    double delta = 1.5;
    double r_max = 1.0;
    double p() const { return d - 1 + delta; }
};

// |p - 1| / 2, the best constant in int r^p u'^2 >= b^2 int r^(p-2) u^2.
double radial_hardy_constant(const RadialProblem& problem);

enum class WeylClass { limit_point, limit_circle };

std::string weyl_name(WeylClass c);

// Endpoint 0 is limit circle iff both zero-energy solutions are square integrable, i.e. delta < 2 - d/2.
WeylClass weyl_classify(int d, double delta);

struct OdeReport {
    double u1_mass = 0.0;  // int_{r_min}^1 |u|^2 r^(d-1) dr per initial condition
    double u2_mass = 0.0;
    double growth_small = 0.0;  // generalized eigenvalues of G(r_min/10) against G(r_min)
    double growth_large = 0.0;
    int bounded_count = 0;
    WeylClass expected = WeylClass::limit_point;
    bool classification_consistent = false;
    double reached_r = 0.0;
    bool partial = false;
};

// Integrates (lambda + H) u = 0 inward from r = 1 with (u, r^p u') = (1, 0) and (0, 1).
OdeReport ode_integrability_check(int d, double delta, double lambda, double r_min);

// Values u(radii) of the solution with u(1) = u0, r^p u'(1) = w0; radii must decrease from at most 1.
std::vector<double> radial_solution(int d, double delta, double lambda, double u0, double w0,
                                    const std::vector<double>& radii);

}  // namespace hardylab
