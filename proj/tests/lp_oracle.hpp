#pragma once

// Brute-force polytope oracles for tests: enumerate basic solutions of a
// LinearConstraintSystem directly. Independent of the production simplex.

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "riskconv/measures.hpp"

namespace riskconv::testing {

inline std::vector<Eigen::VectorXd> enumerate_vertices(const LinearConstraintSystem& sys,
                                                       double feas_tol = 1e-9) {
    const Eigen::Index d = sys.dimension();

    // candidate active rows: inequalities and both bound sides
    std::vector<std::pair<Eigen::VectorXd, double>> rows;
    for (Eigen::Index r = 0; r < sys.ineq_A.rows(); ++r) {
        rows.emplace_back(sys.ineq_A.row(r).transpose(), sys.ineq_b[r]);
    }
    for (Eigen::Index k = 0; k < d; ++k) {
        Eigen::VectorXd up = Eigen::VectorXd::Zero(d);
        up[k] = 1.0;
        rows.emplace_back(up, sys.upper[k]);
        Eigen::VectorXd lo = Eigen::VectorXd::Zero(d);
        lo[k] = -1.0;
        rows.emplace_back(lo, -sys.lower[k]);
    }

    const Eigen::Index eq_rows = sys.eq_A.rows();
    const Eigen::Index need = d - eq_rows;
    std::vector<Eigen::VectorXd> vertices;
    if (need < 0) return vertices;

    std::vector<Eigen::Index> combo(static_cast<size_t>(need));
    const Eigen::Index n_rows = static_cast<Eigen::Index>(rows.size());

    auto emit = [&](const std::vector<Eigen::Index>& active) {
        Eigen::MatrixXd A(d, d);
        Eigen::VectorXd b(d);
        for (Eigen::Index r = 0; r < eq_rows; ++r) {
            A.row(r) = sys.eq_A.row(r);
            b[r] = sys.eq_b[r];
        }
        for (Eigen::Index j = 0; j < need; ++j) {
            A.row(eq_rows + j) = rows[static_cast<size_t>(active[static_cast<size_t>(j)])].first.transpose();
            b[eq_rows + j] = rows[static_cast<size_t>(active[static_cast<size_t>(j)])].second;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        lu.setThreshold(1e-10);
        if (lu.rank() < d) return;
        Eigen::VectorXd q = lu.solve(b);
        if (!sys.contains(q, feas_tol)) return;
        for (const auto& v : vertices) {
            if ((v - q).cwiseAbs().maxCoeff() < 1e-9) return;
        }
        vertices.push_back(std::move(q));
    };

    // iterate over all size-`need` subsets of the candidate rows
    std::function<void(Eigen::Index, Eigen::Index)> rec = [&](Eigen::Index start, Eigen::Index depth) {
        if (depth == need) {
            emit(combo);
            return;
        }
        for (Eigen::Index r = start; r < n_rows; ++r) {
            combo[static_cast<size_t>(depth)] = r;
            rec(r + 1, depth + 1);
        }
    };
    if (need == 0) {
        emit({});
    } else {
        rec(0, 0);
    }
    return vertices;
}

// max c.q over the polytope, via vertex enumeration; nullopt if empty.
inline std::optional<double> vertex_maximum(const LinearConstraintSystem& sys,
                                            const Eigen::VectorXd& c) {
    const auto vertices = enumerate_vertices(sys);
    if (vertices.empty()) return std::nullopt;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) best = std::max(best, c.dot(v));
    return best;
}

// Spectral route for distortion evaluation on the step quantile:
//   integral of VaR^a(x) g'(a) da  =  - sum_k v_k (g(l_k) - g(l_{k-1})).
inline double distortion_value_by_spectral_route(const DistortionFunction& g, const Position& x) {
    const QuantileFunction q = quantile_function(x);
    double total = 0.0;
    double prev = 0.0;
    for (Eigen::Index k = 0; k < q.levels.size(); ++k) {
        total -= q.values[k] * (g(q.levels[k]) - prev);
        prev = g(q.levels[k]);
    }
    return total;
}

} // namespace riskconv::testing
