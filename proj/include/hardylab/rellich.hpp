#pragma once

#include <string>
#include <vector>

#include "hardylab/domains.hpp"
#include "hardylab/fields.hpp"

namespace hardylab {

// B = b^2 - ((2 - delta)/2)^2; nonpositive values signal that the criterion fails.
double rellich_constant(double b_delta, double delta);

// a = b_s - s a_c, the Hardy constant of the form with profile c on the layer of width s.
double form_hardy_constant(double b_delta_s, double s, double a_c);

enum class GradientMode { analytic, finite_difference };

struct EikonalReport {
    double gamma_s = 0.0;  // tau_s ((2 - delta)/(2a))^2
    double tau_s = 0.0;
    double max_ratio = 0.0;  // Gamma_c(chi)/chi^4 over probes
    double min_ratio = 0.0;
    bool pass = false;
    int evaluated = 0;
    int skipped = 0;
};

// chi = a c^(1/2) d^(delta/2 - 1) on probes of the layer of width s; pass iff max ratio <= gamma_s (1 + tol).
EikonalReport eikonal_check(const CoefficientField& field, const DomainSpec& domain, double a, double s, int probes,
                            GradientMode mode = GradientMode::analytic, double tol = 1e-10);

// psi = t^alpha eta(log t), eta a smooth plateau on [lo, hi] with transitions a quarter of the support wide in log t.
struct BumpTest {
    std::string id;
    double alpha = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

// Ten members: alpha in {-0.5, -0.25, 0, 0.5, 1} on [0.1 r, 0.5 r] and [1e-4 r, 0.5 r].
std::vector<BumpTest> default_bump_family(double r);

struct RellichTest {
    std::string id;
    double lhs = 0.0;  // ||H psi||^2
    double rhs = 0.0;  // B^2 ||c d^(delta - 2) psi||^2
    bool satisfied = false;
    bool rejected = false;
};

struct RellichReport {
    double b_delta = 0.0;
    double delta = 0.0;
    double B_delta = 0.0;  // rellich_constant(b_delta, delta)
    double B = 0.0;        // constant used in the check
    std::vector<RellichTest> per_test;
    bool all_satisfied = false;
};

// One-sided check of ||H psi|| >= B ||c d^(delta-2) psi|| through the radial reduction of the domain,
// H psi = -(1/mu) (mu c (1 + E_11) t^delta psi')' on a uniform grid in log t.
// Requires a domain with a radial path and a constant profile.
RellichReport rellich_verify(const DomainSpec& domain, const CoefficientField& field, double r, double b_delta,
                             double B, const std::vector<BumpTest>& family, int grid_points = 20001);

struct AgmonValue {
    double xi_hat = 0.0;
    double e2xi = 0.0;
    double derivative = 0.0;
    bool derivative_bound_ok = false;  // derivative <= (2 - delta)/(2t)
};

// xi(t) = ((2 - delta)/2) log(t/(1+t)) + (1/2) log log((1+t)/t), for t > 0 and delta in [0, 2].
AgmonValue agmon_weight(double t, double delta);

// Relative gap between e^(2 xi) and -(2-delta)^-1 (t/(1+t))^(2-delta) log((t/(1+t))^(2-delta)); delta < 2.
double agmon_identity_residual(double t, double delta);

}  // namespace hardylab
