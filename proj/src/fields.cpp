#include "hardylab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardylab/errors.hpp"

namespace hardylab {

namespace {

double g_dot_x(const CoefficientField& f, std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(f.gradient.size(), x.size()); ++i) s += f.gradient[i] * x[i];
    return s;
}

void check_profile(const CoefficientField& f, double c) {
    if (!(c > 0.0) || c < f.lower_bound)
        throw FieldValidityError("profile c = " + std::to_string(c) + " violates the declared lower bound " +
                                 std::to_string(f.lower_bound));
}

}  // namespace

CoefficientField CoefficientField::exact(double delta) {
    CoefficientField f;
    f.delta = delta;
    return f;
}

bool CoefficientField::is_exact() const {
    for (const auto& row : perturbation)
        for (double a : row)
            if (a != 0.0) return false;
    return true;
}

std::string profile_name(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::constant: return "const";
        case ProfileKind::affine: return "affine";
        case ProfileKind::exponential: return "exp";
    }
    return "unknown";
}

CoefficientField field_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("field document must be a JSON object");
    CoefficientField f;
    if (doc.contains("delta")) {
        if (!doc["delta"].is_number()) throw ConfigError("field 'field.delta': expected a number");
        f.delta = doc["delta"].get<double>();
    }
    if (!(f.delta >= 0.0)) throw ConfigError("field 'field.delta': must be nonnegative");
    const std::string profile = doc.value("profile", std::string("const"));
    if (profile == "const") {
        f.profile = ProfileKind::constant;
        f.c0 = 1.0;
    } else if (profile == "affine") {
        f.profile = ProfileKind::affine;
        f.c0 = 2.0;
        f.gradient = {1.0, 0.0};
    } else if (profile == "exp") {
        f.profile = ProfileKind::exponential;
        f.c0 = 1.0;
        f.gradient = {1.0, 0.0};
    } else {
        throw ConfigError("field 'field.profile': expected const, affine or exp");
    }
    if (doc.contains("c0")) {
        if (!doc["c0"].is_number()) throw ConfigError("field 'field.c0': expected a number");
        f.c0 = doc["c0"].get<double>();
    }
    if (doc.contains("gradient")) {
        if (!doc["gradient"].is_array()) throw ConfigError("field 'field.gradient': expected an array");
        f.gradient = doc["gradient"].get<std::vector<double>>();
    }
    if (doc.contains("lower_bound")) f.lower_bound = doc["lower_bound"].get<double>();
    if (doc.contains("perturbation")) {
        const auto& p = doc["perturbation"];
        if (!p.is_object() || !p.contains("diag") || !p["diag"].is_array())
            throw ConfigError("field 'field.perturbation': expected {\"diag\": [[...], ...]}");
        for (const auto& row : p["diag"]) {
            if (!row.is_array()) throw ConfigError("field 'field.perturbation.diag': rows must be arrays");
            f.perturbation.push_back(row.get<std::vector<double>>());
        }
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        static const char* keys[] = {"delta", "profile", "c0", "gradient", "lower_bound", "perturbation"};
        if (std::none_of(std::begin(keys), std::end(keys), [&](const char* k) { return it.key() == k; }))
            throw ConfigError("field 'field." + it.key() + "': unknown key");
    }
    if (f.profile == ProfileKind::constant && !(f.c0 > 0.0))
        throw ConfigError("field 'field.c0': constant profile must be positive");
    return f;
}

nlohmann::json field_to_json(const CoefficientField& f) {
    nlohmann::json j = {{"delta", f.delta}, {"profile", profile_name(f.profile)}, {"c0", f.c0}};
    if (!f.gradient.empty()) j["gradient"] = f.gradient;
    if (f.lower_bound != 0.0) j["lower_bound"] = f.lower_bound;
    if (!f.perturbation.empty()) j["perturbation"] = {{"diag", f.perturbation}};
    return j;
}

double profile_value(const CoefficientField& f, std::span<const double> x) {
    switch (f.profile) {
        case ProfileKind::constant: return f.c0;
        case ProfileKind::affine: return f.c0 + g_dot_x(f, x);
        case ProfileKind::exponential: return f.c0 * std::exp(g_dot_x(f, x));
    }
    return f.c0;
}

std::vector<double> identity_plus_e(const CoefficientField& f, int dim, double d) {
    std::vector<double> out(dim, 1.0);
    for (int i = 0; i < dim && i < static_cast<int>(f.perturbation.size()); ++i) {
        double power = d, e = 0.0;
        for (double a : f.perturbation[i]) {
            e += a * power;
            power *= d;
        }
        out[i] += e;
    }
    return out;
}

double carre_du_champ_at(const CoefficientField& f, std::span<const double> x, double d,
                         std::span<const double> gpsi, std::span<const double> gphi) {
    const int dim = static_cast<int>(x.size());
    if (static_cast<int>(gpsi.size()) != dim || static_cast<int>(gphi.size()) != dim)
        throw ArgumentError("gradient dimension does not match the point");
    const double scale = profile_value(f, x) * std::pow(d, f.delta);
    const auto diag = identity_plus_e(f, dim, d);
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += gpsi[i] * diag[i] * gphi[i];
    return scale * s;
}

double carre_du_champ(const CoefficientField& f, const DomainSpec& domain, std::span<const double> gpsi,
                      std::span<const double> gphi, std::span<const double> x) {
    return carre_du_champ_at(f, x, distance_to_boundary(domain, x), gpsi, gphi);
}

Envelope envelope(const CoefficientField& f, const DomainSpec& domain, double r, int probes) {
    if (probes < 100) throw ArgumentError("envelope needs at least 100 probes");
    Envelope env{std::numeric_limits<double>::infinity(), 0.0};
    for (const Point& x : layer_probes(domain, r, probes)) {
        const double d = distance_to_boundary(domain, x);
        check_profile(f, profile_value(f, x));
        for (double ev : identity_plus_e(f, domain.dim, d)) {
            if (!(ev > 0.0)) throw FieldValidityError("coefficient matrix is not positive definite at a probe");
            env.sigma = std::min(env.sigma, ev);
            env.tau = std::max(env.tau, ev);
        }
    }
    return env;
}

double profile_gradient_bound(const CoefficientField& f, const DomainSpec& domain, double r, int probes) {
    if (probes < 1) throw ArgumentError("profile_gradient_bound needs probes");
    double best = 0.0;
    for (const Point& x : layer_probes(domain, r, probes)) {
        const double c = profile_value(f, x);
        check_profile(f, c);
        double g2 = 0.0;
        Point y = x;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
            y[i] = x[i] + h;
            const double cp = profile_value(f, y);
            y[i] = x[i] - h;
            const double cm = profile_value(f, y);
            y[i] = x[i];
            const double gi = (cp - cm) / (2.0 * h);
            g2 += gi * gi;
        }
        best = std::max(best, std::sqrt(g2) / c);
    }
    return 0.5 * best;
}

}  // namespace hardylab
