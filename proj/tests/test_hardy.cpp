#include <cmath>
#include <map>

#include <doctest.h>

#include "hardylab/errors.hpp"
#include "hardylab/hardy.hpp"
#include "hardylab/mesh.hpp"

using namespace hardylab;

namespace {

HardyEstimate synthetic(double delta, double b, double indicator = 0.0) {
    HardyEstimate e;
    e.delta = delta;
    e.r_schedule = {0.3, 0.2, 0.1};
    e.per_r.resize(3);
    e.b_delta = b;
    e.stable_index = 2;
    e.error_indicator = indicator;
    e.stabilized = true;
    return e;
}

}  // namespace

TEST_CASE("half-line estimate reproduces (delta - 1)/2") {
    const DomainSpec s = DomainSpec::half_line();
    for (double delta : {1.25, 1.75}) {
        const HardyEstimate e = estimate_hardy(s, CoefficientField::exact(delta), {0.3, 0.2, 0.1});
        CHECK(e.b_delta == doctest::Approx((delta - 1.0) / 2.0).epsilon(0.01));
        CHECK(e.path == SolverPath::radial);
        for (const auto& layer : e.per_r) {
            for (std::size_t i = 1; i < layer.levels.size(); ++i)
                CHECK(layer.levels[i].lambda <= layer.levels[i - 1].lambda);
            REQUIRE(layer.ward_bound.has_value());
            CHECK(layer.b <= *layer.ward_bound * 1.02);
        }
    }
}

TEST_CASE("estimate preconditions") {
    const DomainSpec s = DomainSpec::half_line();
    CHECK_THROWS_AS(estimate_hardy(s, CoefficientField::exact(0.5), {0.3, 0.2, 0.1}), CriterionError);
    CHECK_THROWS_AS(estimate_hardy(s, CoefficientField::exact(1.5), {0.3, 0.2}), ArgumentError);
    CHECK_THROWS_AS(estimate_hardy(s, CoefficientField::exact(1.5), {0.1, 0.2, 0.3}), ArgumentError);
    CHECK(default_schedule(DomainSpec::ball(2, 0.5)) == std::vector<double>{0.15, 0.1, 0.05});
    CHECK(default_schedule(DomainSpec::punctured_space(2)) == std::vector<double>{0.3, 0.2, 0.1});
}

TEST_CASE("divergence lower bound") {
    // Ball of radius 1 with r0 = 0.5: beta = 1, gamma = 1/(R - r0) = 2.
    CHECK(*divergence_lower_bound(DomainSpec::ball(2, 1.0), 1.5, 0.1) == doctest::Approx(0.15));
    CHECK_FALSE(divergence_lower_bound(DomainSpec::ball(2, 1.0), 1.5, 0.3).has_value());
    CHECK(*divergence_lower_bound(DomainSpec::punctured_space(2), 1.5, 0.3) == doctest::Approx(0.75));
    CHECK(*divergence_lower_bound(DomainSpec::half_line(), 1.5, 0.3) == doctest::Approx(0.25));
    CHECK_FALSE(divergence_lower_bound(DomainSpec::decorated_ball(0.1), 1.5, 0.1).has_value());
}

TEST_CASE("Ward cutoffs") {
    CHECK(ward_xi(16.0, 0.01) == 0.0);
    CHECK(ward_xi(16.0, 0.25) == doctest::Approx(0.5));
    CHECK(ward_xi(16.0, 2.0) == 1.0);
    CHECK_THROWS_AS(ward_xi(1.0, 0.5), ArgumentError);
    CHECK(ward_chi(0.25) == 1.0);
    CHECK(ward_chi(0.75) == doctest::Approx(0.5));
    CHECK(ward_chi(1.0) == 0.0);
    // |chi'| <= pi
    for (int i = 1; i < 1000; ++i) {
        const double s = 0.5 + 0.5 * i / 1000.0;
        CHECK(std::abs(ward_chi(s + 1e-7) - ward_chi(s - 1e-7)) / 2e-7 <= std::numbers::pi + 1e-6);
    }
}

TEST_CASE("Ward bound on the half line") {
    const LayerMesh m = build_layer_mesh(DomainSpec::half_line(), 0.3, 4);
    const auto family = ward_family(m, DomainSpec::half_line());
    REQUIRE(family.size() >= 2);
    CHECK(family.front().first == 16.0);
    const WardBound w = ward_upper_bound(m, 1.5, 1.0, family);
    CHECK(w.bound >= 0.25);
    CHECK(w.bound < 0.6);
    // Members are ordered and later members tighten the bound.
    CHECK(w.terms.back().bound < w.terms.front().bound);
    // A member that does not vanish at the Dirichlet ends is rejected.
    auto bad = family;
    bad.front().second.setOnes();
    const WardBound wb = ward_upper_bound(m, 1.5, 1.0, bad);
    CHECK(wb.terms.front().rejected);
}

TEST_CASE("criterion verdicts") {
    const DomainSpec ball = DomainSpec::ball(2, 1.0);
    HardyEstimate e = synthetic(1.8, 0.4);
    CriterionReport r = criterion_report(ball, CoefficientField::exact(1.8), &e);
    CHECK(r.verdict == Verdict::self_adjoint);
    CHECK(*r.margin == doctest::Approx(0.3));
    e = synthetic(1.2, 0.1);
    r = criterion_report(ball, CoefficientField::exact(1.2), &e);
    CHECK(r.verdict == Verdict::not_established);
    e = synthetic(1.5, 0.251);
    CHECK(criterion_report(ball, CoefficientField::exact(1.5), &e).verdict == Verdict::undetermined);
    e = synthetic(1.5, 0.26, 0.02);
    CHECK(criterion_report(ball, CoefficientField::exact(1.5), &e).verdict == Verdict::undetermined);
    r = criterion_report(ball, CoefficientField::exact(0.9), nullptr);
    CHECK(r.verdict == Verdict::not_self_adjoint);
    CHECK(r.necessary_violated);
    r = criterion_report(ball, CoefficientField::exact(2.0), nullptr);
    CHECK(r.verdict == Verdict::self_adjoint);
    CHECK_THROWS_AS(criterion_report(ball, CoefficientField::exact(1.5), nullptr), ArgumentError);
    e = synthetic(1.4, 0.2);
    CHECK_THROWS_AS(criterion_report(ball, CoefficientField::exact(1.5), &e), ArgumentError);
}

TEST_CASE("property suite on exact standard values") {
    const DomainSpec ball = DomainSpec::ball(2, 1.0);
    const std::vector<double> grid = {1.2, 1.5, 1.8, 2.0};
    std::map<double, double> b;
    for (double d : grid) b[d] = (d - 1.0) / 2.0;
    const PropertyReport ok = property_suite(ball, grid, b);
    CHECK(ok.all_pass);
    CHECK(ok.checks.size() == 3);
    b[1.5] = 0.3;  // above the standard value by 20%
    const PropertyReport bad = property_suite(ball, grid, b);
    CHECK_FALSE(bad.all_pass);
    CHECK_THROWS_AS(property_suite(ball, {0.9, 1.5}, b), ArgumentError);
}

TEST_CASE("component criterion") {
    // Two boundary points in the plane at delta = 1.5: b = (2 + 1.5 - 2)/2 = 0.75 > 0.25.
    const ComponentReport ok = component_criterion(2, {{0.0, 1.5, 0.75}, {0.0, 1.5, 0.75}}, 1.0);
    CHECK(ok.sufficient);
    const ComponentReport weak = component_criterion(2, {{0.0, 1.5, 0.75}, {1.0, 1.2, 0.1}}, 1.0);
    CHECK_FALSE(weak.sufficient);
    CHECK(weak.components[1].markov_range);
    CHECK_FALSE(weak.components[1].sufficient);
    const ComponentReport empty = component_criterion(2, {}, 1.0);
    CHECK(empty.degenerate);
    CHECK(empty.sufficient);
    CHECK_THROWS_AS(component_criterion(2, {}, 0.0), ArgumentError);
}

TEST_CASE("critical delta on the punctured plane") {
    CriticalDeltaOptions o;
    o.hardy.mesh.path = SolverPath::radial;
    const CriticalDelta c = critical_delta(DomainSpec::punctured_space(2), CoefficientField::exact(1.5), o);
    CHECK(c.delta_c == doctest::Approx(1.0).epsilon(0.02));
    CHECK_FALSE(c.flagged);
    CHECK(c.theorem_lower == 1.0);
    CHECK(static_cast<int>(c.history.size()) <= o.max_estimates);
}
