#pragma once

#include <Eigen/Dense>
#include <functional>

namespace riskconv::optim {

// Euclidean projection onto { q : sum q = 1, 0 <= q <= upper }.
// Requires sum(upper) >= 1.
Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& y, const Eigen::VectorXd& upper);

struct PgResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Projected gradient ascent with Armijo backtracking. Stops when the
// unit-step fixed-point residual ||x - P(x + g)||_inf falls below
// `stationarity_tol`.
PgResult maximize_projected_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& gradient,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& project,
    Eigen::VectorXd start, long max_iters, double stationarity_tol);

struct MinResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    bool diverged = false;
};

// BFGS minimization with a weak Wolfe bracketing line search; tolerant of
// the kinked (subgradient) objectives produced by quantile-based measures.
MinResult minimize_bfgs(
    const std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>& value_and_gradient,
    Eigen::VectorXd start, int max_iters, double grad_tol);

// Coordinatewise pattern search with step doubling/halving. Declares
// divergence once the value drops below `divergence_floor`.
MinResult minimize_pattern_search(const std::function<double(const Eigen::VectorXd&)>& f,
                                  Eigen::VectorXd start, double initial_step, double min_step,
                                  double divergence_floor, long max_sweeps = 100000);

} // namespace riskconv::optim
