// Acceptance run: one PASS/FAIL line per criterion. `acceptance 3 6` runs a subset.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hardylab/cli.hpp"
#include "hardylab/domains.hpp"
#include "hardylab/hardy.hpp"
#include "hardylab/radial.hpp"
#include "hardylab/rellich.hpp"
#include "hardylab/report.hpp"

using namespace hardylab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string f6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const std::vector<double> kSchedule = {0.3, 0.2, 0.1};

// Runs shared by several criteria, computed on first use.
struct Runs {
    std::map<double, HardyEstimate> half_line;
    std::optional<HardyEstimate> disk, punctured_radial, punctured_planar;

    const HardyEstimate& half(double delta) {
        auto it = half_line.find(delta);
        if (it == half_line.end())
            it = half_line.emplace(delta, estimate_hardy(DomainSpec::half_line(), CoefficientField::exact(delta),
                                                         kSchedule))
                     .first;
        return it->second;
    }
    const HardyEstimate& disk15() {
        if (!disk) {
            HardyOptions o;
            o.mesh.path = SolverPath::planar;
            o.level_min = 0;
            o.level_max = 4;
            disk = estimate_hardy(DomainSpec::ball(2, 1.0), CoefficientField::exact(1.5), kSchedule, o);
        }
        return *disk;
    }
    const HardyEstimate& punct(SolverPath path) {
        auto& slot = path == SolverPath::radial ? punctured_radial : punctured_planar;
        if (!slot) {
            HardyOptions o;
            o.mesh.path = path;
            slot = estimate_hardy(DomainSpec::punctured_space(2), CoefficientField::exact(1.5), kSchedule, o);
        }
        return *slot;
    }
};

Runs runs;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool monotone_levels(const HardyEstimate& e) {
    for (const auto& l : e.per_r)
        for (std::size_t i = 1; i < l.levels.size(); ++i)
            if (l.levels[i].lambda > l.levels[i - 1].lambda) return false;
    return true;
}

Outcome c1() {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{true, ""};
    for (double delta : {1.25, 1.5, 1.75}) {
        const double ref = radial_hardy_constant({1, delta, 1.0});
        const double b = runs.half(delta).b_delta;
        const double rel = std::abs(b / ref - 1.0);
        o.pass = o.pass && rel <= 0.02;
        o.detail += "delta=" + f6(delta) + " b=" + f6(b) + " ref=" + f6(ref) + "; ";
    }
    const double secs = seconds_since(t0);
    o.pass = o.pass && secs < 30.0;
    o.detail += f6(secs) + " s";
    return o;
}

Outcome c2() {
    const auto t0 = std::chrono::steady_clock::now();
    const HardyEstimate& e = runs.disk15();
    const double secs = seconds_since(t0);
    const bool close = std::abs(e.b_delta / 0.25 - 1.0) <= 0.10;
    const bool mono = monotone_levels(e);
    return {close && mono && secs < 300.0,
            "b=" + f6(e.b_delta) + " levels monotone=" + (mono ? "yes" : "no") + "; " + f6(secs) + " s"};
}

Outcome c3() {
    const auto t0 = std::chrono::steady_clock::now();
    const double radial = runs.punct(SolverPath::radial).b_delta;
    const double planar = runs.punct(SolverPath::planar).b_delta;
    const double secs = seconds_since(t0);
    const bool ok = std::abs(radial / 0.75 - 1.0) <= 0.01 && std::abs(planar / radial - 1.0) <= 0.10 && secs < 180.0;
    return {ok, "radial b=" + f6(radial) + " planar b=" + f6(planar) + "; " + f6(secs) + " s"};
}

Outcome c4() {
    const auto t0 = std::chrono::steady_clock::now();
    int agree = 0, total = 0;
    for (int d = 1; d <= 5; ++d)
        for (int k = 0; k <= 8; ++k) {
            const double delta = 0.25 * k;
            ++total;
            agree += (weyl_classify(d, delta) == WeylClass::limit_point) == (delta >= 2.0 - d / 2.0);
        }
    int ode_ok = 0;
    const std::vector<std::pair<int, double>> spots = {{3, 0.4}, {2, 1.5}, {1, 0.5}, {5, 0.0}, {2, 0.5}, {3, 1.0}};
    for (auto [d, delta] : spots) {
        const OdeReport r = ode_integrability_check(d, delta, 1.0, 1e-4);
        ode_ok += r.classification_consistent && !r.partial;
    }
    const double secs = seconds_since(t0);
    return {agree == total && ode_ok == 6 && secs < 60.0,
            "grid " + std::to_string(agree) + "/" + std::to_string(total) + ", ODE spot pairs " +
                std::to_string(ode_ok) + "/6; " + f6(secs) + " s"};
}

Outcome c5() {
    const auto t0 = std::chrono::steady_clock::now();
    CriticalDeltaOptions disk;
    disk.r_schedule = kSchedule;
    disk.hardy.mesh.path = SolverPath::planar;
    const CriticalDelta a = critical_delta(DomainSpec::ball(2, 1.0), CoefficientField::exact(1.5), disk);
    CriticalDeltaOptions punct;
    punct.r_schedule = kSchedule;
    punct.hardy.mesh.path = SolverPath::radial;
    const CriticalDelta b = critical_delta(DomainSpec::punctured_space(2), CoefficientField::exact(1.5), punct);
    const double secs = seconds_since(t0);
    const bool ok = std::abs(a.delta_c - 1.5) <= 0.05 && std::abs(b.delta_c - 1.0) <= 0.02 && secs < 600.0;
    return {ok, "disk delta_c=" + f6(a.delta_c) + " (" + std::to_string(a.history.size()) +
                    " estimates), punctured delta_c=" + f6(b.delta_c) + "; " + f6(secs) + " s"};
}

// lower <= b_hat is read within the extrapolation error bar, i.e. against the finest raw level,
// a Rayleigh-Ritz value; b_hat <= ward + 2% is checked as stated.
Outcome c6() {
    std::vector<std::pair<std::string, const HardyEstimate*>> all;
    for (double delta : {1.25, 1.5, 1.75}) all.push_back({"half_line " + f6(delta), &runs.half(delta)});
    all.push_back({"disk", &runs.disk15()});
    all.push_back({"punctured radial", &runs.punct(SolverPath::radial)});
    all.push_back({"punctured planar", &runs.punct(SolverPath::planar)});
    Outcome o{true, ""};
    int layers = 0, lower_checked = 0, ward_checked = 0;
    double worst_upper = -1e300, worst_lower_strict = -1e300;
    for (const auto& [name, e] : all) {
        for (const auto& l : e->per_r) {
            ++layers;
            const double finest = std::sqrt(std::max(0.0, l.levels.back().lambda));
            if (l.lower_bound) {
                ++lower_checked;
                if (*l.lower_bound > finest) {
                    o.pass = false;
                    o.detail += name + " r=" + f6(l.r) + " lower " + f6(*l.lower_bound) + " > " + f6(finest) + "; ";
                }
                worst_lower_strict = std::max(worst_lower_strict, *l.lower_bound - l.b);
            }
            if (!l.ward_bound) {
                o.pass = false;
                o.detail += name + " r=" + f6(l.r) + " has no Ward bound; ";
                continue;
            }
            ++ward_checked;
            worst_upper = std::max(worst_upper, l.b - 1.02 * *l.ward_bound);
            if (l.b > 1.02 * *l.ward_bound) {
                o.pass = false;
                o.detail += name + " r=" + f6(l.r) + " b " + f6(l.b) + " > ward " + f6(*l.ward_bound) + "; ";
            }
        }
    }
    o.detail += std::to_string(layers) + " layers, " + std::to_string(lower_checked) + " lower and " +
                std::to_string(ward_checked) + " Ward comparisons; max(lower - b_hat)=" + f6(worst_lower_strict) +
                ", max(b_hat - 1.02 ward)=" + f6(worst_upper);
    return o;
}

Outcome c7() {
    const auto t0 = std::chrono::steady_clock::now();
    const DomainSpec disk = DomainSpec::ball(2, 1.0);
    std::map<double, HardyEstimate> est;
    est[1.5] = runs.disk15();
    HardyOptions o;
    o.mesh.path = SolverPath::planar;
    o.level_max = 4;
    for (double delta : {1.2, 1.8, 2.0}) est[delta] = estimate_hardy(disk, CoefficientField::exact(delta), kSchedule, o);
    const PropertyReport rep = property_suite(disk, {1.2, 1.5, 1.8, 2.0}, est);
    const double secs = seconds_since(t0);
    std::string detail;
    for (const auto& c : rep.checks)
        detail += c.name + "=" + (c.applicable ? (c.pass ? "pass" : "FAIL") : "n/a") + " ";
    detail += "b=(";
    for (double b : rep.b) detail += f6(b) + " ";
    detail += "); " + f6(secs) + " s";
    return {rep.all_pass && secs < 600.0, detail};
}

Outcome c8() {
    const auto t0 = std::chrono::steady_clock::now();
    const LollipopScan scan = lollipop_scan({0.2, 0.1, 0.05}, 1.5, kSchedule);
    const double secs = seconds_since(t0);
    const double b005 = scan.rows.back().b;
    const bool below = b005 < 0.25 * (1.0 - 0.02);
    const bool slope = std::abs(scan.slope / 0.5 - 1.0) <= 0.20;
    std::string detail = "b(eps)=";
    for (const auto& r : scan.rows) detail += f6(r.b) + " ";
    detail += "below standard: " + std::string(below ? "yes" : "no") + "; slope=" + f6(scan.slope) +
              " (target 0.5 +/- 20%): " + (slope ? "yes" : "no") + "; " + f6(secs) + " s";
    return {below && slope && secs < 600.0, detail};
}

Outcome c9() {
    const auto t0 = std::chrono::steady_clock::now();
    const double b = runs.punct(SolverPath::radial).b_delta;
    const double delta = 1.5;
    const double formula = b * b - ((2.0 - delta) / 2.0) * ((2.0 - delta) / 2.0);
    const bool exact = rellich_constant(b, delta) == formula;
    const DomainSpec p = DomainSpec::punctured_space(2);
    const CoefficientField f = CoefficientField::exact(delta);
    const auto family = default_bump_family(1.0);
    const RellichReport ok = rellich_verify(p, f, 1.0, b, 0.5, family);
    const RellichReport inflated = rellich_verify(p, f, 1.0, b, 4.0 * 0.5, family);
    int failures = 0;
    for (const auto& t : inflated.per_test) failures += !t.satisfied && !t.rejected;
    const double secs = seconds_since(t0);
    return {exact && ok.all_satisfied && family.size() == 10 && !inflated.all_satisfied && secs < 120.0,
            "B_delta=" + f6(rellich_constant(b, delta)) + " formula match=" + (exact ? "yes" : "no") +
                ", B=0.5 passes=" + (ok.all_satisfied ? "yes" : "no") + ", B=2 failing members=" +
                std::to_string(failures) + "; " + f6(secs) + " s"};
}

Outcome c10() {
    const auto t0 = std::chrono::steady_clock::now();
    const EikonalReport e =
        eikonal_check(CoefficientField::exact(1.5), DomainSpec::ball(2, 1.0), 0.25, 0.3, 1000, GradientMode::analytic);
    const double secs = seconds_since(t0);
    const double dev = std::max(std::abs(e.max_ratio / e.gamma_s - 1.0), std::abs(e.min_ratio / e.gamma_s - 1.0));
    return {dev <= 1e-10 && e.evaluated >= 1000 && secs < 10.0,
            "max |ratio/gamma - 1|=" + f6(dev) + " over " + std::to_string(e.evaluated) + " probes; " + f6(secs) +
                " s"};
}

nlohmann::json agmon_report() {
    nlohmann::json rows = nlohmann::json::array();
    for (double delta : {0.0, 0.5, 1.0, 1.5, 1.9}) {
        double worst = 0.0;
        int bound_ok = 0;
        for (int i = 0; i < 10000; ++i) {
            const double t = std::pow(10.0, -6.0 + 8.0 * i / 9999.0);
            worst = std::max(worst, agmon_identity_residual(t, delta));
            bound_ok += agmon_weight(t, delta).derivative_bound_ok;
        }
        rows.push_back({{"delta", delta}, {"max_residual", worst}, {"derivative_bound_ok", bound_ok}});
    }
    return rows;
}

Outcome c11() {
    const auto t0 = std::chrono::steady_clock::now();
    const nlohmann::json rows = agmon_report();
    const double secs = seconds_since(t0);
    bool ok = secs < 10.0;
    double worst = 0.0;
    int bound = 0;
    for (const auto& r : rows) {
        worst = std::max(worst, r["max_residual"].get<double>());
        bound += r["derivative_bound_ok"].get<int>();
        ok = ok && r["max_residual"].get<double>() <= 1e-12 && r["derivative_bound_ok"].get<int>() == 10000;
    }
    return {ok, "max identity residual=" + f6(worst) + ", derivative bound at " + std::to_string(bound) +
                    "/50000 points; " + f6(secs) + " s"};
}

Outcome c12() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> rs = {0.08, 0.04, 0.02, 0.01};
    const VolumeScan p = volume_scan(DomainSpec::punctured_space(2), {0.0, 0.0}, 2.0, rs, 20000, 12345);
    const VolumeScan d = volume_scan(DomainSpec::ball(2, 1.0), {1.0, 0.0}, 0.5, rs, 20000, 12345);
    const double secs = seconds_since(t0);
    const bool ok = std::abs(p.slope - 2.0) <= 1e-12 && std::abs(d.slope - 1.0) <= 0.10 && secs < 60.0;
    return {ok, "punctured slope=" + f6(p.slope) + " disk slope=" + f6(d.slope) + "; " + f6(secs) + " s"};
}

std::string run_to_string(const RunConfig& c) {
    std::ostringstream out, err;
    run(c, out, err);
    return out.str();
}

Outcome c13() {
    auto item1 = [] {
        std::string s;
        for (double delta : {1.25, 1.5, 1.75}) {
            RunConfig c;
            c.domain = {{"kind", "half_line"}, {"dim", 1}};
            c.delta = delta;
            s += run_to_string(c);
        }
        return s;
    };
    auto item4 = [] {
        std::string s;
        for (int d = 1; d <= 5; ++d)
            for (int k = 0; k <= 8; ++k) {
                RunConfig c;
                c.command = "radial-classify";
                c.d = d;
                c.delta = 0.25 * k;
                s += run_to_string(c);
            }
        return s;
    };
    auto item11 = [] { return dump_json(agmon_report()); };
    const bool a = item1() == item1(), b = item4() == item4(), c = item11() == item11();
    return {a && b && c, std::string("item 1: ") + (a ? "identical" : "differs") + ", item 4: " +
                             (b ? "identical" : "differs") + ", item 11: " + (c ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1D analytic oracle", c1},         {"unit disk", c2},
        {"punctured plane", c3},            {"Weyl classification", c4},
        {"critical degeneracy", c5},        {"sandwich", c6},
        {"property suite", c7},             {"lollipop counterexample", c8},
        {"Rellich consistency", c9},        {"eikonal equality", c10},
        {"Agmon weight identities", c11},   {"volume scaling", c12},
        {"determinism", c13}};
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    if (selected.empty())
        for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);
    int failed = 0;
    for (int k : selected) {
        if (k < 1 || k > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "no criterion %d\n", k);
            return 2;
        }
        Outcome o;
        try {
            o = criteria[k - 1].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", k, criteria[k - 1].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
