#include "hardylab/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hardylab/errors.hpp"
#include "hardylab/parallel.hpp"

namespace hardylab {

namespace {

double codim(const DomainSpec& domain) { return domain.dim - domain.hausdorff_dim; }

void check_markov_range(const DomainSpec& domain, double delta) {
    const double lo = 2.0 - codim(domain);
    if (!(delta > lo))
        throw CriterionError("delta = " + std::to_string(delta) + " lies outside the Markov range delta > " +
                             std::to_string(lo) + " = 2 - (d - d_H); no Hardy constant exists there");
}

}  // namespace

int default_level_max(const DomainSpec& domain, SolverPath path) {
    if (domain.kind == DomainKind::decorated_ball) return 2;
    return path == SolverPath::planar ? 4 : 5;
}

LayerEstimate estimate_layer(const DomainSpec& domain, const CoefficientField& field, double r,
                             const HardyOptions& opt) {
    const SolverPath path = resolve_path(domain, opt.mesh.path);
    const int lmax = opt.level_max >= 0 ? opt.level_max : default_level_max(domain, path);
    if (lmax - opt.level_min < 2) throw ArgumentError("a ladder needs at least three levels");
    MeshOptions mo = opt.mesh;
    mo.path = path;

    LayerEstimate out;
    out.r = r;
    LayerMesh finest;
    for (int level = opt.level_min; level <= lmax; ++level) {
        LayerMesh mesh = build_layer_mesh(domain, r, level, mo);
        const FormPair forms = assemble(mesh, field, opt.use_profile);
        const EigenResult eig = smallest_eigenpair(forms, opt.eigen);
        out.levels.push_back({level, mesh.h_level, eig.lambda_min, eig.residual, eig.iterations, mesh.num_dofs()});
        if (level == lmax) finest = std::move(mesh);
    }
    std::vector<std::pair<double, double>> pairs;
    for (const auto& l : out.levels) pairs.emplace_back(l.h, l.lambda);
    out.extrapolation = extrapolate(pairs, opt.monotone_rel_tol * std::abs(out.levels.front().lambda));
    out.b = std::sqrt(std::max(out.extrapolation.lambda_inf, 0.0));

    if (opt.with_bounds) {
        out.lower_bound = divergence_lower_bound(domain, field.delta, r, opt.r0);
        auto family = ward_family(finest, domain);
        if (!family.empty()) out.ward_bound = ward_upper_bound(finest, field.delta, codim(domain), family).bound;
    }
    return out;
}

std::vector<double> default_schedule(const DomainSpec& domain) {
    const double s = std::min(1.0, inradius(domain));
    return {0.3 * s, 0.2 * s, 0.1 * s};
}

HardyEstimate estimate_hardy(const DomainSpec& domain, const CoefficientField& field,
                             const std::vector<double>& r_schedule, const HardyOptions& opt) {
    validate(domain);
    check_markov_range(domain, field.delta);
    if (r_schedule.size() < 3) throw ArgumentError("the r schedule needs at least three entries");
    for (std::size_t i = 0; i < r_schedule.size(); ++i) {
        if (!(r_schedule[i] > 0.0)) throw ArgumentError("layer widths must be positive");
        if (i > 0 && !(r_schedule[i] < r_schedule[i - 1])) throw ArgumentError("the r schedule must decrease");
    }
    HardyEstimate est;
    est.delta = field.delta;
    est.path = resolve_path(domain, opt.mesh.path);
    est.r_schedule = r_schedule;
    est.per_r.resize(r_schedule.size());
    parallel_for(r_schedule.size(), opt.threads,
                 [&](std::size_t i) { est.per_r[i] = estimate_layer(domain, field, r_schedule[i], opt); });

    const std::size_t n = est.per_r.size();
    est.stable_index = n - 1;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(est.per_r[i].b - est.per_r[i - 1].b) < opt.stabilization_tol) {
            est.stable_index = i;
            est.stabilized = true;
        }
    }
    est.b_delta = est.per_r[est.stable_index].b;
    est.error_indicator = std::abs(est.per_r[n - 1].b - est.per_r[n - 2].b);
    return est;
}

std::optional<double> divergence_lower_bound(const DomainSpec& domain, double delta, double r, double r0) {
    const CatalogInfo info = catalog_info(domain, std::max(r0, r));
    if (!info.beta_gamma) return std::nullopt;
    const auto [beta, gamma] = *info.beta_gamma;
    const double v = delta + beta - 2.0 - gamma * r;
    if (!(v > 1e-12)) return std::nullopt;
    return v / 2.0;
}

double ward_xi(double n, double t) {
    if (!(n >= 2.0)) throw ArgumentError("ward sequence index n must be at least 2");
    if (t < 1.0 / n) return 0.0;
    if (t >= 1.0) return 1.0;
    return std::log(n * t) / std::log(n);
}

double ward_chi(double s) {
    if (s <= 0.5) return 1.0;
    if (s >= 1.0) return 0.0;
    const double c = std::cos(std::numbers::pi * (s - 0.5));
    return c * c;
}

Eigen::VectorXd ward_sequence(const LayerMesh& mesh, const DomainSpec& domain, double n,
                              const std::optional<AnchorBall>& anchor) {
    if (!(n >= 2.0)) throw ArgumentError("ward sequence index n must be at least 2");
    const std::size_t nn = mesh.num_nodes();
    std::vector<double> da(mesh.t.begin(), mesh.t.end());
    if (anchor) {
        if (mesh.dim == 1) {
            // The reduced boundary is the single point at t = 0 of the representative ray.
            const Point b = mesh.ambient_1d(0.0);
            double dist = 0.0;
            for (std::size_t k = 0; k < b.size(); ++k) {
                const double c = k < anchor->center.size() ? anchor->center[k] : 0.0;
                dist += (b[k] - c) * (b[k] - c);
            }
            if (std::sqrt(dist) > anchor->radius) throw GeometryError("anchor ball misses the boundary");
        } else {
            if (anchor->center.size() != 2) throw ArgumentError("planar anchor needs a 2D center");
            const BoundaryPieces pieces =
                clipped_boundary(domain, Vec2{anchor->center[0], anchor->center[1]}, anchor->radius);
            if (pieces.empty()) throw GeometryError("anchor ball misses the boundary");
            for (std::size_t i = 0; i < nn; ++i) da[i] = distance_to_pieces(pieces, mesh.position(i));
        }
    }
    Eigen::VectorXd psi(static_cast<Eigen::Index>(nn));
    for (std::size_t i = 0; i < nn; ++i)
        psi[static_cast<Eigen::Index>(i)] = ward_xi(n, mesh.t[i] / mesh.r) * ward_chi(da[i] / mesh.r);
    return psi;
}

WardBound ward_upper_bound(const LayerMesh& mesh, double delta, double beta,
                           const std::vector<std::pair<double, Eigen::VectorXd>>& family) {
    if (beta < 0.0) throw ArgumentError("beta must be nonnegative");
    const FormPair w = assemble_weighted(mesh, 2.0 - beta, -beta);
    WardBound out;
    out.beta = beta;
    out.bound = std::numeric_limits<double>::infinity();
    const double first = std::abs((beta + delta - 2.0) / 2.0);
    for (std::size_t k = 0; k < family.size(); ++k) {
        const Eigen::VectorXd& psi = family[k].second;
        WardTerm term;
        term.label = family[k].first;
        if (psi.size() != static_cast<Eigen::Index>(mesh.num_nodes()))
            throw ArgumentError("test function has the wrong number of nodal values");
        for (std::size_t i = 0; i < mesh.num_nodes(); ++i)
            if (mesh.dirichlet[i] && std::abs(psi[static_cast<Eigen::Index>(i)]) > 1e-12) term.rejected = true;
        Eigen::VectorXd v(static_cast<Eigen::Index>(w.dof_node.size()));
        for (std::size_t j = 0; j < w.dof_node.size(); ++j) v[static_cast<Eigen::Index>(j)] = psi[w.dof_node[j]];
        term.numerator = std::sqrt(std::max(0.0, v.dot(w.K * v)));
        term.denominator = std::sqrt(std::max(0.0, v.dot(w.M * v)));
        if (!(term.denominator > 0.0)) term.rejected = true;
        if (!term.rejected) {
            term.bound = first + term.numerator / term.denominator;
            if (term.bound < out.bound) {
                out.bound = term.bound;
                out.best = k;
            }
        }
        out.terms.push_back(term);
    }
    if (!std::isfinite(out.bound)) throw ArgumentError("every test function was rejected");
    return out;
}

std::vector<std::pair<double, Eigen::VectorXd>> ward_family(const LayerMesh& mesh, const DomainSpec& domain,
                                                            const std::optional<AnchorBall>& anchor) {
    double tmin = mesh.r;
    for (double t : mesh.t)
        if (t > 0.0) tmin = std::min(tmin, t);
    std::vector<std::pair<double, Eigen::VectorXd>> out;
    for (int k = 4; k <= 1000; k += 4) {
        const double n = std::ldexp(1.0, k);
        if (1.0 / n < 16.0 * tmin / mesh.r) break;
        out.emplace_back(n, ward_sequence(mesh, domain, n, anchor));
    }
    return out;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::self_adjoint: return "self_adjoint";
        case Verdict::not_established: return "not_established";
        case Verdict::undetermined: return "undetermined";
        case Verdict::not_self_adjoint: return "not_self_adjoint";
    }
    return "unknown";
}

CriterionReport criterion_report(const DomainSpec& domain, const CoefficientField& field,
                                 const HardyEstimate* estimate, double tol) {
    CriterionReport rep;
    rep.delta = field.delta;
    const double beta = codim(domain);
    rep.standard_value = (beta + field.delta - 2.0) / 2.0;
    rep.markov_unique = field.delta >= 2.0 - beta;
    rep.necessary_violated = !rep.markov_unique;
    if (estimate) {
        if (std::abs(estimate->delta - field.delta) > 1e-12)
            throw ArgumentError("estimate was computed for a different delta");
        rep.b_delta = estimate->b_delta;
        const LayerEstimate& layer = estimate->per_r[estimate->stable_index];
        rep.lower_bound = layer.lower_bound;
        rep.ward_bound = layer.ward_bound;
    }
    if (rep.necessary_violated) {
        rep.verdict = Verdict::not_self_adjoint;
        return rep;
    }
    if (field.delta >= 2.0) {
        rep.self_adjoint_sufficient = true;
        rep.verdict = Verdict::self_adjoint;
        return rep;
    }
    if (!estimate) throw ArgumentError("a Hardy estimate is required for delta < 2");
    rep.margin = estimate->b_delta - (2.0 - field.delta) / 2.0;
    const double band = std::max(tol, estimate->error_indicator);
    if (std::abs(*rep.margin) <= band) {
        rep.verdict = Verdict::undetermined;
    } else if (*rep.margin > 0.0) {
        rep.self_adjoint_sufficient = true;
        rep.verdict = Verdict::self_adjoint;
    } else {
        rep.verdict = Verdict::not_established;
    }
    return rep;
}

CriticalDelta critical_delta(const DomainSpec& domain, const CoefficientField& field,
                             const CriticalDeltaOptions& opt) {
    if (!(opt.tol >= 0.01)) throw ArgumentError("critical delta tolerance must be at least 0.01");
    const double beta = codim(domain);
    const std::vector<double> schedule = opt.r_schedule.empty() ? default_schedule(domain) : opt.r_schedule;
    HardyOptions hopt = opt.hardy;
    hopt.with_bounds = false;

    CriticalDelta out;
    out.theorem_lower = 2.0 - beta / 2.0;
    auto g = [&](double delta) {
        if (static_cast<int>(out.history.size()) >= opt.max_estimates)
            throw ArgumentError("critical delta exceeded its estimate budget");
        CoefficientField f = field;
        f.delta = delta;
        const HardyEstimate e = estimate_hardy(domain, f, schedule, hopt);
        const double v = e.b_delta - (2.0 - delta) / 2.0;
        out.history.push_back({delta, e.b_delta, v});
        return v;
    };

    // The search bracket starts a little below the theorem's lower end, inside the Markov range.
    double lo = std::max(2.0 - beta + 0.01, out.theorem_lower - 0.2);
    double hi = 2.0;
    const double glo = g(lo);
    if (glo > 0.0) {
        out.delta_c = lo;
        out.flagged = true;
        out.note = "g > 0 on the whole bracket; lower endpoint returned";
    } else {
        const double ghi = g(hi);
        if (ghi <= 0.0) {
            out.delta_c = hi;
            out.flagged = true;
            out.note = "no sign change up to delta = 2";
        } else {
            while (hi - lo > opt.tol && static_cast<int>(out.history.size()) < opt.max_estimates) {
                const double mid = 0.5 * (lo + hi);
                (g(mid) > 0.0 ? hi : lo) = mid;
            }
            out.delta_c = 0.5 * (lo + hi);
            if (hi - lo > opt.tol) {
                out.flagged = true;
                out.note = "estimate budget exhausted before the bracket reached tol";
            }
        }
    }
    out.in_theorem_interval = out.delta_c >= out.theorem_lower - opt.tol && out.delta_c <= 2.0;
    return out;
}

PropertyReport property_suite(const DomainSpec& domain, const std::vector<double>& grid,
                              const std::map<double, double>& b_by_delta, double tol_rel, double tol_mono) {
    const double beta = codim(domain);
    PropertyReport rep;
    rep.grid = grid;
    std::sort(rep.grid.begin(), rep.grid.end());
    for (double delta : rep.grid) {
        if (!(delta > 2.0 - beta && delta <= 2.0))
            throw ArgumentError("grid value " + std::to_string(delta) + " lies outside (2 - (d - d_H), 2]");
        const auto it = b_by_delta.find(delta);
        if (it == b_by_delta.end()) throw ArgumentError("no estimate for grid value " + std::to_string(delta));
        rep.b.push_back(it->second);
    }
    const std::size_t n = rep.grid.size();

    PropertyCheck mono{"monotone_b_plus_half_delta", n >= 2, true, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 1; i < n; ++i) {
        const double m = (rep.b[i] + rep.grid[i] / 2.0) - (rep.b[i - 1] + rep.grid[i - 1] / 2.0) + tol_mono;
        mono.worst_margin = std::min(mono.worst_margin, m);
    }
    PropertyCheck upper{"below_standard_value", n >= 1, true, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < n; ++i) {
        const double standard = (beta + rep.grid[i] - 2.0) / 2.0;
        upper.worst_margin = std::min(upper.worst_margin, standard * (1.0 + tol_rel) - rep.b[i]);
    }
    PropertyCheck lip{"b2_lipschitz", false, true, std::numeric_limits<double>::infinity()};
    if (n >= 1 && std::abs(rep.grid.back() - 2.0) < 1e-12) {
        const double b2 = rep.b.back();
        lip.applicable = b2 >= beta / 2.0 * (1.0 - tol_rel);
        if (lip.applicable)
            for (std::size_t i = 0; i < n; ++i) {
                const double half = (2.0 - rep.grid[i]) / 2.0;
                lip.worst_margin = std::min(lip.worst_margin, half * (1.0 + tol_rel) - std::abs(b2 - rep.b[i]));
            }
    }
    for (PropertyCheck* c : {&mono, &upper, &lip}) {
        if (!c->applicable) c->worst_margin = 0.0;
        c->pass = !c->applicable || c->worst_margin >= 0.0;
        rep.all_pass = rep.all_pass && c->pass;
        rep.checks.push_back(*c);
    }
    return rep;
}

PropertyReport property_suite(const DomainSpec& domain, const std::vector<double>& grid,
                              const std::map<double, HardyEstimate>& estimates, double tol_rel, double tol_mono) {
    std::map<double, double> b;
    for (const auto& [delta, e] : estimates) b[delta] = e.b_delta;
    return property_suite(domain, grid, b, tol_rel, tol_mono);
}

ComponentReport component_criterion(int dim, const std::vector<Component>& components, double separation) {
    if (!(separation > 0.0)) throw ArgumentError("components must be separated by a positive distance");
    ComponentReport rep;
    rep.degenerate = components.empty();
    rep.sufficient = true;
    for (const Component& c : components) {
        ComponentVerdict v;
        v.markov_range = c.delta >= 2.0 - (dim - c.hausdorff_dim);
        v.sufficient = v.markov_range && (c.delta >= 2.0 || (2.0 - c.delta) / 2.0 < c.b_delta);
        rep.sufficient = rep.sufficient && v.sufficient;
        rep.components.push_back(v);
    }
    return rep;
}

LollipopScan lollipop_scan(const std::vector<double>& eps, double delta, const std::vector<double>& r_schedule,
                           const HardyOptions& options) {
    if (eps.size() < 2) throw ArgumentError("a lollipop scan needs at least two aspect ratios");
    LollipopScan out;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double e : eps) {
        const DomainSpec domain = DomainSpec::decorated_ball(e);
        const HardyEstimate est = estimate_hardy(domain, CoefficientField::exact(delta), r_schedule, options);
        out.rows.push_back({e, est.b_delta});
        const double x = std::log(e), y = std::log(est.b_delta);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(eps.size());
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return out;
}

}  // namespace hardylab
