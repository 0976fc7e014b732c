#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "hardylab/domains.hpp"

namespace hardylab {

enum class ProfileKind { constant, affine, exponential };

// C(x) = c(x) d(x)^delta (I + E(x)) with E diagonal and E_ii a polynomial in d without constant term.
struct CoefficientField {
    double delta = 1.5;
    ProfileKind profile = ProfileKind::constant;
    double c0 = 1.0;
    std::vector<double> gradient;                   // g in c0 + g.x or c0 exp(g.x); missing entries are zero
    std::vector<std::vector<double>> perturbation;  // perturbation[i][j] multiplies d^(j+1) in E_ii
    double lower_bound = 0.0;                       // declared mu; c must stay at or above it

    static CoefficientField exact(double delta);
    bool is_exact() const;
};

std::string profile_name(ProfileKind kind);

CoefficientField field_from_json(const nlohmann::json& doc);
nlohmann::json field_to_json(const CoefficientField& field);

double profile_value(const CoefficientField& field, std::span<const double> x);

// Diagonal entries of I + E at distance d, for an ambient dimension dim.
std::vector<double> identity_plus_e(const CoefficientField& field, int dim, double d);

// grad_psi^T C(x) grad_phi with C evaluated at x for the given distance d.
double carre_du_champ_at(const CoefficientField& field, std::span<const double> x, double d,
                         std::span<const double> grad_psi, std::span<const double> grad_phi);

// Same with d = distance_to_boundary(domain, x).
double carre_du_champ(const CoefficientField& field, const DomainSpec& domain, std::span<const double> grad_psi,
                      std::span<const double> grad_phi, std::span<const double> x);

struct Envelope {
    double sigma = 0.0;
    double tau = 0.0;
};

// Extreme eigenvalues of C / (c d^delta) over layer probes.
Envelope envelope(const CoefficientField& field, const DomainSpec& domain, double r, int probes);

// Half the largest |grad c| / c over layer probes, gradients by central differences.
double profile_gradient_bound(const CoefficientField& field, const DomainSpec& domain, double r, int probes);

}  // namespace hardylab
