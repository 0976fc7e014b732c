#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hardylab/domains.hpp"
#include "hardylab/fields.hpp"
#include "hardylab/mesh.hpp"
#include "hardylab/spectral.hpp"

namespace hardylab {

struct HardyOptions {
    MeshOptions mesh;
    int level_min = 0;
    int level_max = -1;  // -1: 5 on the radial path, 4 planar, 2 for the decorated ball
    EigenOptions eigen;
    double stabilization_tol = 1e-3;
    // Level-to-level increases up to this fraction of the coarsest eigenvalue still count as monotone.
    double monotone_rel_tol = 1e-4;
    bool use_profile = false;
    bool with_bounds = true;  // compute divergence and Ward bounds per layer
    double r0 = 0.5;          // layer bound for the catalog gamma
    int threads = 1;
};

int default_level_max(const DomainSpec& domain, SolverPath path);

struct LevelResult {
    int level = 0;
    double h = 1.0;
    double lambda = 0.0;
    double residual = 0.0;
    int iterations = 0;
    std::size_t dofs = 0;
};

struct LayerEstimate {
    double r = 0.0;
    std::vector<LevelResult> levels;
    Extrapolation extrapolation;
    double b = 0.0;  // sqrt(max(lambda_inf, 0))
    std::optional<double> lower_bound;
    std::optional<double> ward_bound;
};

struct HardyEstimate {
    double delta = 0.0;
    SolverPath path = SolverPath::radial;
    std::vector<double> r_schedule;
    std::vector<LayerEstimate> per_r;
    double b_delta = 0.0;
    std::size_t stable_index = 0;  // schedule entry that supplied b_delta
    double error_indicator = 0.0;  // |b| change over the last two entries
    bool stabilized = false;
};

// One refinement ladder on the layer of width r.
LayerEstimate estimate_layer(const DomainSpec& domain, const CoefficientField& field, double r,
                             const HardyOptions& options = {});

HardyEstimate estimate_hardy(const DomainSpec& domain, const CoefficientField& field,
                             const std::vector<double>& r_schedule, const HardyOptions& options = {});

// (delta + beta - 2 - gamma r) / 2 from the catalog (beta, gamma); empty when not applicable or not positive.
std::optional<double> divergence_lower_bound(const DomainSpec& domain, double delta, double r, double r0 = 0.5);

struct AnchorBall {
    Point center;
    double radius = 0.0;
};

// xi_n(t) = 0 below 1/n, log(n t) / log n on [1/n, 1], 1 above.
double ward_xi(double n, double t);
// Decreasing C^1 cutoff: 1 on [0, 1/2], cos^2 ramp to 0 at 1, |chi'| <= pi.
double ward_chi(double s);

// Nodal values of psi_n = xi_n(d / r) chi(d_A / r) over all mesh nodes. d_A = d without an anchor.
Eigen::VectorXd ward_sequence(const LayerMesh& mesh, const DomainSpec& domain, double n,
                              const std::optional<AnchorBall>& anchor = std::nullopt);

struct WardTerm {
    double label = 0.0;
    double numerator = 0.0;    // ||d^(1 - beta/2) grad psi||
    double denominator = 0.0;  // ||d^(-beta/2) psi||
    double bound = 0.0;
    bool rejected = false;
};

struct WardBound {
    double bound = 0.0;
    double beta = 0.0;
    std::size_t best = 0;
    std::vector<WardTerm> terms;
};

// Minimum over the family of |(beta + delta - 2)/2| + numerator / denominator.
// Members that do not vanish on Dirichlet nodes, or have zero denominator, are rejected.
WardBound ward_upper_bound(const LayerMesh& mesh, double delta, double beta,
                           const std::vector<std::pair<double, Eigen::VectorXd>>& family);

// psi_n for n = 2^4, 2^8, ... while 1/n stays above 16 times the smallest resolved distance over r.
std::vector<std::pair<double, Eigen::VectorXd>> ward_family(const LayerMesh& mesh, const DomainSpec& domain,
                                                            const std::optional<AnchorBall>& anchor = std::nullopt);

enum class Verdict { self_adjoint, not_established, undetermined, not_self_adjoint };

std::string verdict_name(Verdict v);

struct CriterionReport {
    double delta = 0.0;
    std::optional<double> b_delta;
    double standard_value = 0.0;
    bool self_adjoint_sufficient = false;
    bool markov_unique = false;
    bool necessary_violated = false;
    std::optional<double> margin;  // b_delta - (2 - delta)/2
    Verdict verdict = Verdict::not_established;
    std::optional<double> delta_c;
    std::optional<double> lower_bound, ward_bound;
};

// estimate may be null when delta >= 2 or delta is below the Markov range.
// |margin| <= max(tol, estimate error indicator) is reported as undetermined.
CriterionReport criterion_report(const DomainSpec& domain, const CoefficientField& field,
                                 const HardyEstimate* estimate, double tol = 5e-3);

struct CriticalDeltaOptions {
    double tol = 0.01;
    int max_estimates = 12;
    std::vector<double> r_schedule;  // empty: default_schedule(domain)
    HardyOptions hardy;
};

struct CriticalSample {
    double delta = 0.0;
    double b = 0.0;
    double g = 0.0;
};

struct CriticalDelta {
    double delta_c = 0.0;
    bool flagged = false;
    std::string note;
    double theorem_lower = 0.0;  // 2 - (d - d_H)/2
    bool in_theorem_interval = false;
    std::vector<CriticalSample> history;
};

CriticalDelta critical_delta(const DomainSpec& domain, const CoefficientField& field,
                             const CriticalDeltaOptions& options = {});

// Decreasing layer widths used when the caller gives none.
std::vector<double> default_schedule(const DomainSpec& domain);

struct PropertyCheck {
    std::string name;
    bool applicable = true;
    bool pass = true;
    double worst_margin = 0.0;  // negative on failure
};

struct PropertyReport {
    std::vector<double> grid;
    std::vector<double> b;
    std::vector<PropertyCheck> checks;
    bool all_pass = true;
};

// (i) b + delta/2 non-decreasing (absolute tol_mono); (ii) b <= standard value (1 + tol_rel);
// (iii) |b_2 - b| <= (2 - delta)/2 (1 + tol_rel) when b_2 reaches (d - d_H)/2 (1 - tol_rel).
PropertyReport property_suite(const DomainSpec& domain, const std::vector<double>& grid,
                              const std::map<double, double>& b_by_delta, double tol_rel = 0.02,
                              double tol_mono = 1e-3);
PropertyReport property_suite(const DomainSpec& domain, const std::vector<double>& grid,
                              const std::map<double, HardyEstimate>& estimates, double tol_rel = 0.02,
                              double tol_mono = 1e-3);

struct Component {
    double hausdorff_dim = 0.0;
    double delta = 0.0;
    double b_delta = 0.0;
};

struct ComponentVerdict {
    bool markov_range = false;
    bool sufficient = false;
};

struct ComponentReport {
    std::vector<ComponentVerdict> components;
    bool sufficient = false;
    bool degenerate = false;  // empty list: vacuous pass
};

// Each boundary component must satisfy (2 - delta_j)/2 < b_j or delta_j >= 2; separation must be positive.
ComponentReport component_criterion(int dim, const std::vector<Component>& components, double separation);

struct LollipopRow {
    double eps = 0.0;
    double b = 0.0;
};

struct LollipopScan {
    std::vector<LollipopRow> rows;
    double slope = 0.0;  // least squares of log b against log eps
};

LollipopScan lollipop_scan(const std::vector<double>& eps, double delta, const std::vector<double>& r_schedule,
                           const HardyOptions& options = {});

}  // namespace hardylab
