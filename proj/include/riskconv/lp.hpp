#pragma once

#include <Eigen/Dense>
#include <optional>

#include "riskconv/measures.hpp"

namespace riskconv::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
    Status status;
    Eigen::VectorXd x;
    double value = 0.0;
};

// maximize c.x over the constraint system (dense two-phase simplex with
// Bland's rule; pivot tolerance from tolerances().lp_pivot). Entries of
// `upper` may be +infinity.
Solution maximize(const LinearConstraintSystem& sys, const Eigen::VectorXd& c);

// Phase-1 feasibility: any point of the system, or nullopt if empty.
std::optional<Eigen::VectorXd> find_feasible(const LinearConstraintSystem& sys);

} // namespace riskconv::lp
