#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hardylab/mesh.hpp"

namespace hardylab {

enum class InnerSolver { cholesky, cg };

struct EigenOptions {
    double tol = 1e-9;
    int max_iter = 500;
    InnerSolver inner = InnerSolver::cholesky;
    // Fixed shift for the CG path: K + sigma M with sigma = sigma_scale * trace(M) / n.
    double sigma_scale = 1e-8;
    bool verbose = false;
};

struct EigenResult {
    double lambda_min = 0.0;
    Eigen::VectorXd vector;  // M-normalized, on interior dofs
    double residual = 0.0;   // ||K v - lambda M v|| / ||M v|| on the Jacobi-scaled pencil
    int iterations = 0;
};

// Smallest eigenpair of K v = lambda M v by inverse iteration from the M-normalized all-ones vector.
EigenResult smallest_eigenpair(const FormPair& forms, const EigenOptions& options = {});
EigenResult smallest_eigenpair(const Eigen::SparseMatrix<double>& K, const Eigen::SparseMatrix<double>& M,
                               const EigenOptions& options = {});

double rayleigh_quotient(const FormPair& forms, const Eigen::VectorXd& v);

struct Extrapolation {
    double lambda_inf = 0.0;
    std::optional<double> rate;  // observed order p; empty when undefined
    bool refused = false;        // non-monotone input: lambda_inf is the last raw value
    std::string note;
};

// Fits lambda(h) = lambda_inf + C h^p on the last three (h, lambda) pairs.
Extrapolation extrapolate(const std::vector<std::pair<double, double>>& levels, double monotone_tol = 0.0);

}  // namespace hardylab
