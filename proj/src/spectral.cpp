#include "hardylab/spectral.hpp"

#include <cmath>
#include <iostream>
#include <limits>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include "hardylab/errors.hpp"

namespace hardylab {

namespace {

using SpMat = Eigen::SparseMatrix<double>;

void check_pencil(const SpMat& K, const SpMat& M) {
    if (K.rows() != K.cols() || M.rows() != M.cols() || K.rows() != M.rows())
        throw MatrixValidityError("K and M must be square and of equal size");
    if (K.rows() == 0) throw MatrixValidityError("empty pencil");
    const SpMat Kt = K.transpose(), Mt = M.transpose();
    if ((K - Kt).norm() > 1e-12 * K.norm() || (M - Mt).norm() > 1e-12 * M.norm())
        throw MatrixValidityError("pencil is not symmetric");
}

}  // namespace

EigenResult smallest_eigenpair(const FormPair& forms, const EigenOptions& options) {
    return smallest_eigenpair(forms.K, forms.M, options);
}

EigenResult smallest_eigenpair(const SpMat& K, const SpMat& M, const EigenOptions& opt) {
    if (!(opt.tol >= 1e-12 && opt.tol <= 1e-4)) throw ArgumentError("tolerance must lie in [1e-12, 1e-4]");
    if (opt.max_iter < 1) throw ArgumentError("max_iter must be positive");
    check_pencil(K, M);
    const Eigen::Index n = K.rows();

    // Jacobi scaling S = diag(M)^(-1/2) keeps the graded-mesh entries near unit size.
    Eigen::VectorXd s(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double mii = M.coeff(i, i);
        if (!(mii > 0.0)) throw MatrixValidityError("mass matrix has a nonpositive diagonal entry");
        s[i] = 1.0 / std::sqrt(mii);
    }
    const SpMat Ks = s.asDiagonal() * K * s.asDiagonal();
    const SpMat Ms = s.asDiagonal() * M * s.asDiagonal();
    SpMat pattern = Ks + Ms;

    {
        Eigen::SimplicialLLT<SpMat> mcheck(Ms);
        if (mcheck.info() != Eigen::Success) throw MatrixValidityError("mass matrix is not positive definite");
    }

    auto m_norm = [&](const Eigen::VectorXd& v) { return std::sqrt(v.dot(Ms * v)); };
    Eigen::VectorXd w = s.cwiseInverse();
    w /= m_norm(w);

    EigenResult res;
    double best = std::numeric_limits<double>::infinity();
    const double sigma = opt.sigma_scale * Ms.diagonal().sum() / static_cast<double>(n);

    if (opt.inner == InnerSolver::cg) {
        const SpMat A = Ks + sigma * Ms;
        Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper, Eigen::DiagonalPreconditioner<double>> cg;
        cg.setTolerance(1e-13);
        cg.setMaxIterations(static_cast<int>(std::max<Eigen::Index>(10 * n, 1000)));
        cg.compute(A);
        Eigen::VectorXd y = w;
        for (int it = 1; it <= opt.max_iter; ++it) {
            y = cg.solveWithGuess(Ms * w, y);
            w = y / m_norm(y);
            const Eigen::VectorXd Kw = Ks * w, Mw = Ms * w;
            const double theta = w.dot(Kw);
            const double r = (Kw - theta * Mw).norm() / Mw.norm();
            best = std::min(best, r);
            if (opt.verbose) std::cerr << "[eig/cg] it " << it << " theta " << theta << " res " << r << "\n";
            if (r <= opt.tol) {
                res.lambda_min = theta;
                res.residual = r;
                res.iterations = it;
                res.vector = s.asDiagonal() * w;
                return res;
            }
        }
        throw IterationLimitError("inverse iteration (CG inner solves) did not converge", best, opt.max_iter);
    }

    Eigen::SimplicialLLT<SpMat> llt;
    llt.analyzePattern(pattern);
    auto factor = [&](double mu) {
        pattern = Ks - mu * Ms;
        llt.factorize(pattern);
        return llt.info() == Eigen::Success;
    };
    double mu = -sigma;
    if (!factor(mu)) throw MatrixValidityError("stiffness matrix is not positive semidefinite");

    for (int it = 1; it <= opt.max_iter; ++it) {
        const Eigen::VectorXd y = llt.solve(Ms * w);
        w = y / m_norm(y);
        const Eigen::VectorXd Kw = Ks * w, Mw = Ms * w;
        const double theta = w.dot(Kw);
        const double r = (Kw - theta * Mw).norm() / Mw.norm();
        best = std::min(best, r);
        if (opt.verbose) std::cerr << "[eig] it " << it << " shift " << mu << " theta " << theta << " res " << r << "\n";
        if (r <= opt.tol) {
            res.lambda_min = theta;
            res.residual = r;
            res.iterations = it;
            res.vector = s.asDiagonal() * w;
            return res;
        }
        // A shift is kept only if K - mu M factors, which certifies mu < lambda_min.
        double target = theta - 2.0 * r;
        bool moved = false;
        for (int attempt = 0; attempt < 4 && target > mu; ++attempt) {
            if (factor(target)) {
                mu = target;
                moved = true;
                break;
            }
            target = mu + 0.5 * (target - mu);
        }
        if (!moved && !factor(mu)) throw MatrixValidityError("refactorization failed at an accepted shift");
    }
    throw IterationLimitError("inverse iteration did not converge", best, opt.max_iter);
}

double rayleigh_quotient(const FormPair& forms, const Eigen::VectorXd& v) {
    if (v.size() != forms.M.rows()) throw ArgumentError("coefficient vector has the wrong length");
    const double den = v.dot(forms.M * v);
    if (!(den > 0.0)) throw ArgumentError("vector has zero M-norm");
    return v.dot(forms.K * v) / den;
}

Extrapolation extrapolate(const std::vector<std::pair<double, double>>& levels, double monotone_tol) {
    if (levels.size() < 3) throw ArgumentError("extrapolation needs at least three levels");
    Extrapolation out;
    const std::size_t n = levels.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (!(levels[i].first < levels[i - 1].first)) throw ArgumentError("h must decrease along the levels");
        if (levels[i].second > levels[i - 1].second + monotone_tol) {
            out.refused = true;
            out.lambda_inf = levels.back().second;
            out.note = "non-monotone sequence; last level returned";
            return out;
        }
    }
    const auto [h0, l0] = levels[n - 3];
    const auto [h1, l1] = levels[n - 2];
    const auto [h2, l2] = levels[n - 1];
    const double d1 = l0 - l1, d2 = l1 - l2;
    const double scale = std::max({std::abs(l0), std::abs(l1), std::abs(l2), 1e-300});
    if (std::abs(d1) <= 1e-14 * scale && std::abs(d2) <= 1e-14 * scale) {
        out.lambda_inf = l2;
        out.note = "constant sequence; rate undefined";
        return out;
    }
    if (!(d1 > 0.0 && d2 > 0.0) || d2 >= d1) {
        out.lambda_inf = l2;
        out.note = "differences do not contract; rate undefined";
        return out;
    }
    const double target = d1 / d2;
    auto g = [&](double p) {
        return (std::pow(h0, p) - std::pow(h1, p)) / (std::pow(h1, p) - std::pow(h2, p)) - target;
    };
    double lo = 1e-3, hi = 30.0;
    if (g(lo) * g(hi) > 0.0) {
        out.lambda_inf = l2;
        out.note = "no rate in (0, 30]; rate undefined";
        return out;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(lo) * g(mid) <= 0.0 ? hi : lo) = mid;
    }
    const double p = 0.5 * (lo + hi);
    const double C = d2 / (std::pow(h1, p) - std::pow(h2, p));
    out.rate = p;
    out.lambda_inf = l2 - C * std::pow(h2, p);
    return out;
}

}  // namespace hardylab
