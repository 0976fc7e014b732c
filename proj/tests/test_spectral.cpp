#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include "hardylab/errors.hpp"
#include "hardylab/mesh.hpp"
#include "hardylab/spectral.hpp"
#include "oracles.hpp"

using namespace hardylab;

namespace {

// Tridiagonal pencil of a 1D Laplacian on a non-uniform grid with lumped-free P1 mass.
struct Pencil {
    std::vector<double> kd, ko, md, mo;
    Eigen::SparseMatrix<double> K, M;
};

Pencil laplacian_pencil(int n) {
    Pencil p;
    std::vector<double> x(n + 2);
    for (int i = 0; i <= n + 1; ++i) x[i] = std::pow(static_cast<double>(i) / (n + 1), 1.3);
    p.kd.assign(n, 0.0);
    p.md.assign(n, 0.0);
    p.ko.assign(n - 1, 0.0);
    p.mo.assign(n - 1, 0.0);
    for (int e = 0; e <= n; ++e) {
        const double h = x[e + 1] - x[e];
        const int a = e - 1, b = e;  // dof indices of the cell ends
        if (a >= 0) p.kd[a] += 1.0 / h, p.md[a] += h / 3.0;
        if (b < n) p.kd[b] += 1.0 / h, p.md[b] += h / 3.0;
        if (a >= 0 && b < n) p.ko[a] = -1.0 / h, p.mo[a] = h / 6.0;
    }
    std::vector<Eigen::Triplet<double>> tk, tm;
    for (int i = 0; i < n; ++i) {
        tk.emplace_back(i, i, p.kd[i]);
        tm.emplace_back(i, i, p.md[i]);
        if (i + 1 < n) {
            tk.emplace_back(i, i + 1, p.ko[i]);
            tk.emplace_back(i + 1, i, p.ko[i]);
            tm.emplace_back(i, i + 1, p.mo[i]);
            tm.emplace_back(i + 1, i, p.mo[i]);
        }
    }
    p.K.resize(n, n);
    p.M.resize(n, n);
    p.K.setFromTriplets(tk.begin(), tk.end());
    p.M.setFromTriplets(tm.begin(), tm.end());
    return p;
}

}  // namespace

TEST_CASE("smallest eigenpair against inertia bisection") {
    const Pencil p = laplacian_pencil(200);
    const double ref = oracle::tridiagonal_min_eig(p.kd, p.ko, p.md, p.mo, 0.0, 100.0);
    CHECK(ref == doctest::Approx(std::numbers::pi * std::numbers::pi).epsilon(1e-3));
    for (InnerSolver inner : {InnerSolver::cholesky, InnerSolver::cg}) {
        EigenOptions o;
        o.inner = inner;
        o.max_iter = 5000;
        const EigenResult e = smallest_eigenpair(p.K, p.M, o);
        CHECK(e.lambda_min == doctest::Approx(ref).epsilon(1e-8));
        CHECK(e.residual <= 1e-9);
        CHECK(e.vector.dot(p.M * e.vector) == doctest::Approx(1.0));
    }
}

TEST_CASE("smallest eigenpair against a dense solver") {
    const LayerMesh m = build_layer_mesh(DomainSpec::ball(2, 1.0), 0.3, 0);
    const FormPair fp = assemble(m, CoefficientField::exact(1.8));
    const Eigen::MatrixXd K(fp.K), M(fp.M);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> dense(K, M);
    const EigenResult e = smallest_eigenpair(fp);
    CHECK(e.lambda_min == doctest::Approx(dense.eigenvalues()[0]).epsilon(1e-8));
    CHECK(rayleigh_quotient(fp, e.vector) == doctest::Approx(e.lambda_min).epsilon(1e-10));
}

TEST_CASE("iteration budget") {
    const Pencil p = laplacian_pencil(50);
    EigenOptions o;
    o.max_iter = 1;
    o.tol = 1e-12;
    try {
        smallest_eigenpair(p.K, p.M, o);
        FAIL("expected IterationLimitError");
    } catch (const IterationLimitError& e) {
        CHECK(e.iterations() == 1);
        CHECK(e.best_residual() > 0.0);
    }
}

TEST_CASE("three-level extrapolation") {
    // lambda = 2 + 3 h^2 exactly.
    const Extrapolation e = extrapolate({{1.0, 5.0}, {0.5, 2.75}, {0.25, 2.1875}});
    CHECK(e.lambda_inf == doctest::Approx(2.0));
    REQUIRE(e.rate.has_value());
    CHECK(*e.rate == doctest::Approx(2.0));
    CHECK_FALSE(e.refused);
    const Extrapolation bad = extrapolate({{1.0, 1.0}, {0.5, 1.2}, {0.25, 0.9}});
    CHECK(bad.refused);
    CHECK(bad.lambda_inf == 0.9);
    const Extrapolation flat = extrapolate({{1.0, 1.0}, {0.5, 1.0}, {0.25, 1.0}});
    CHECK(flat.lambda_inf == 1.0);
    CHECK_FALSE(flat.refused);
}
