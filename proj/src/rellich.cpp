#include "hardylab/rellich.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hardylab/errors.hpp"
#include "hardylab/mesh.hpp"

namespace hardylab {

namespace {

// Smooth step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

std::vector<double> profile_gradient(const CoefficientField& f, std::span<const double> x) {
    std::vector<double> g(x.size(), 0.0);
    if (f.profile == ProfileKind::constant) return g;
    const double c = profile_value(f, x);
    for (std::size_t i = 0; i < x.size() && i < f.gradient.size(); ++i)
        g[i] = f.profile == ProfileKind::affine ? f.gradient[i] : c * f.gradient[i];
    return g;
}

}  // namespace

double rellich_constant(double b_delta, double delta) {
    const double h = (2.0 - delta) / 2.0;
    return b_delta * b_delta - h * h;
}

double form_hardy_constant(double b_delta_s, double s, double a_c) {
    if (!(s > 0.0)) throw ArgumentError("layer width s must be positive");
    if (!(a_c >= 0.0)) throw ArgumentError("profile constant a_c must be nonnegative");
    return b_delta_s - s * a_c;
}

EikonalReport eikonal_check(const CoefficientField& field, const DomainSpec& domain, double a, double s, int probes,
                            GradientMode mode, double tol) {
    if (!(a > 0.0)) throw ArgumentError("a must be positive");
    if (probes < 1) throw ArgumentError("at least one probe is required");
    const double delta = field.delta;
    EikonalReport rep;
    rep.tau_s = envelope(field, domain, s, std::max(probes, 100)).tau;
    const double q = (2.0 - delta) / (2.0 * a);
    rep.gamma_s = rep.tau_s * q * q;
    rep.max_ratio = -1.0;
    rep.min_ratio = std::numeric_limits<double>::infinity();

    auto chi = [&](std::span<const double> x) {
        const double d = distance_to_boundary(domain, x);
        return a * std::sqrt(profile_value(field, x)) * std::pow(d, delta / 2.0 - 1.0);
    };
    for (const Point& x : layer_probes(domain, s, probes)) {
        std::vector<double> g(x.size());
        double d = 0.0, value = 0.0;
        try {
            d = distance_to_boundary(domain, x);
            value = chi(x);
            if (mode == GradientMode::analytic) {
                const std::vector<double> gd = distance_gradient(domain, x);
                const std::vector<double> gc = profile_gradient(field, x);
                const double c = profile_value(field, x);
                for (std::size_t i = 0; i < x.size(); ++i)
                    g[i] = a * (0.5 / std::sqrt(c) * gc[i] * std::pow(d, delta / 2.0 - 1.0) +
                                std::sqrt(c) * (delta / 2.0 - 1.0) * std::pow(d, delta / 2.0 - 2.0) * gd[i]);
            } else {
                const double h = 1e-6 * d;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    Point xp = x, xm = x;
                    xp[i] += h;
                    xm[i] -= h;
                    g[i] = (chi(xp) - chi(xm)) / (2.0 * h);
                }
            }
        } catch (const GeometryError&) {
            ++rep.skipped;
            continue;
        } catch (const DomainMembershipError&) {
            ++rep.skipped;
            continue;
        }
        const double gamma = carre_du_champ_at(field, x, d, g, g);
        const double ratio = gamma / std::pow(value, 4);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        rep.min_ratio = std::min(rep.min_ratio, ratio);
        ++rep.evaluated;
    }
    if (rep.evaluated == 0) throw GeometryError("every eikonal probe fell on the singular set");
    rep.pass = rep.max_ratio <= rep.gamma_s * (1.0 + tol);
    return rep;
}

std::vector<BumpTest> default_bump_family(double r) {
    std::vector<BumpTest> out;
    const double alphas[] = {-0.5, -0.25, 0.0, 0.5, 1.0};
    const std::pair<double, double> supports[] = {{0.1, 0.5}, {1e-4, 0.5}};
    for (const auto& [lo, hi] : supports)
        for (double alpha : alphas) {
            std::ostringstream id;
            id << "alpha=" << alpha << ",support=[" << lo << "r," << hi << "r]";
            out.push_back({id.str(), alpha, lo * r, hi * r});
        }
    return out;
}

RellichReport rellich_verify(const DomainSpec& domain, const CoefficientField& field, double r, double b_delta,
                             double B, const std::vector<BumpTest>& family, int grid_points) {
    if (field.profile != ProfileKind::constant)
        throw ArgumentError("radial Rellich verification needs a constant profile");
    if (family.empty()) throw ArgumentError("empty test family");
    if (grid_points < 1000) throw ArgumentError("at least 1000 grid points are required");
    MeshOptions mo;
    mo.path = SolverPath::radial;
    const LayerMesh ray = build_layer_mesh(domain, r, 0, mo);
    const double delta = field.delta, c = field.c0;

    RellichReport rep;
    rep.b_delta = b_delta;
    rep.delta = delta;
    rep.B_delta = rellich_constant(b_delta, delta);
    rep.B = B;
    rep.all_satisfied = true;

    auto mu = [&](double t) {
        return ray.measure_scale * std::pow(ray.ray_origin + ray.ray_sign * t, ray.measure_power);
    };
    auto e11 = [&](double t) { return identity_plus_e(field, std::max(ray.ambient_dim, 2), t)[0]; };

    for (const BumpTest& test : family) {
        RellichTest res;
        res.id = test.id;
        if (!(test.lo > 0.0 && test.hi > test.lo && test.hi < r)) {
            res.rejected = true;
            rep.per_test.push_back(res);
            continue;
        }
        const double s0 = std::log(test.lo), s1 = std::log(test.hi);
        const double w = (s1 - s0) / 4.0;
        const int n = grid_points;
        const double ds = (s1 - s0) / (n - 1);
        // Transitions must span many grid cells; support ends keep two cells of clearance.
        if (w / ds < 50.0) {
            res.rejected = true;
            rep.per_test.push_back(res);
            continue;
        }
        std::vector<double> s(n), t(n), psi(n);
        for (int i = 0; i < n; ++i) {
            s[i] = s0 + i * ds;
            t[i] = std::exp(s[i]);
            const double eta = smooth_step((s[i] - s0) / w) * smooth_step((s1 - s[i]) / w);
            psi[i] = std::pow(t[i], test.alpha) * eta;
        }
        std::vector<double> flux(n - 1);
        for (int i = 0; i + 1 < n; ++i) {
            const double th = std::exp(0.5 * (s[i] + s[i + 1]));
            flux[i] = mu(th) * c * e11(th) * std::pow(th, delta - 1.0) * (psi[i + 1] - psi[i]) / ds;
        }
        double lhs = 0.0, rhs = 0.0;
        for (int i = 1; i + 1 < n; ++i) {
            const double m = mu(t[i]);
            const double hpsi = -(flux[i] - flux[i - 1]) / (ds * m * t[i]);
            const double weight = m * t[i] * ds;
            lhs += hpsi * hpsi * weight;
            const double v = c * std::pow(t[i], delta - 2.0) * psi[i];
            rhs += v * v * weight;
        }
        res.lhs = lhs;
        res.rhs = B * B * rhs;
        res.satisfied = res.lhs >= res.rhs;
        rep.all_satisfied = rep.all_satisfied && res.satisfied;
        rep.per_test.push_back(res);
    }
    return rep;
}

AgmonValue agmon_weight(double t, double delta) {
    if (!(t > 0.0)) throw ArgumentError("t must be positive");
    if (!(delta >= 0.0 && delta <= 2.0)) throw ArgumentError("delta must lie in [0, 2]");
    const double k = (2.0 - delta) / 2.0;
    const double L = std::log1p(1.0 / t);  // log((1+t)/t)
    const double lr = -L;                  // log(t/(1+t))
    AgmonValue v;
    v.xi_hat = k * lr + 0.5 * std::log(L);
    v.e2xi = std::exp(2.0 * k * lr) * L;
    const double tt = t * (1.0 + t);
    v.derivative = k / tt - 0.5 / (tt * L);
    v.derivative_bound_ok = v.derivative <= k / t;
    return v;
}

double agmon_identity_residual(double t, double delta) {
    if (!(delta < 2.0)) throw ArgumentError("the identity needs delta < 2");
    const AgmonValue v = agmon_weight(t, delta);
    const double u = t / (1.0 + t);
    const double p = std::pow(u, 2.0 - delta);
    const double other = -p * std::log(p) / (2.0 - delta);
    return std::abs(v.e2xi - other) / std::abs(other);
}

}  // namespace hardylab
