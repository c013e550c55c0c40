#include "riskconv/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "riskconv/errors.hpp"
#include "riskconv/tolerances.hpp"

namespace riskconv::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense simplex tableau over the standard form
//   maximize c.y  s.t.  A y (<=|=) b,  y >= 0,  b >= 0 after row flips.
// Slack columns cover <= rows, surplus+artificial cover >= rows,
// artificials cover = rows. Bland's rule throughout.
class Tableau {
public:
    Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
            const std::vector<int>& row_kind /* -1: >=, 0: =, +1: <= */)
        : m_(A.rows()), n_(A.cols()) {
        int slacks = 0;
        int artificials = 0;
        for (int kind : row_kind) {
            if (kind != 0) ++slacks;
            if (kind <= 0) ++artificials;
        }
        cols_ = n_ + slacks + artificials;
        first_artificial_ = n_ + slacks;
        T_ = Eigen::MatrixXd::Zero(m_, cols_ + 1);
        T_.topLeftCorner(m_, n_) = A;
        T_.col(cols_) = b;
        basis_.assign(static_cast<size_t>(m_), -1);

        Eigen::Index slack_col = n_;
        Eigen::Index art_col = first_artificial_;
        for (Eigen::Index r = 0; r < m_; ++r) {
            const int kind = row_kind[static_cast<size_t>(r)];
            if (kind == 1) {
                T_(r, slack_col) = 1.0;
                basis_[static_cast<size_t>(r)] = static_cast<int>(slack_col);
                ++slack_col;
            } else if (kind == -1) {
                T_(r, slack_col) = -1.0; // surplus
                ++slack_col;
                T_(r, art_col) = 1.0;
                basis_[static_cast<size_t>(r)] = static_cast<int>(art_col);
                ++art_col;
            } else {
                T_(r, art_col) = 1.0;
                basis_[static_cast<size_t>(r)] = static_cast<int>(art_col);
                ++art_col;
            }
        }
    }

    // maximize the linear objective `c` (length cols_), optionally barring
    // artificial columns from entering. Returns false if unbounded.
    bool run(const Eigen::VectorXd& c, bool allow_artificials) {
        const double tol = tolerances().lp_pivot;
        // reduced-cost row z_j - c_j for the current basis
        Eigen::VectorXd obj = -c;
        for (Eigen::Index r = 0; r < m_; ++r) {
            const int j = basis_[static_cast<size_t>(r)];
            if (c[j] != 0.0) obj += c[j] * T_.row(r).head(cols_).transpose();
        }

        const long max_iters = 2000L * static_cast<long>(m_ + cols_) + 10000L;
        for (long iter = 0; iter < max_iters; ++iter) {
            // Bland: smallest improving column index
            Eigen::Index enter = -1;
            for (Eigen::Index j = 0; j < cols_; ++j) {
                if (!allow_artificials && j >= first_artificial_) break;
                if (obj[j] < -tol) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true; // optimal

            // ratio test, Bland tie-break on smallest basis index
            Eigen::Index leave = -1;
            double best_ratio = kInf;
            for (Eigen::Index r = 0; r < m_; ++r) {
                const double a = T_(r, enter);
                if (a > tol) {
                    const double ratio = T_(r, cols_) / a;
                    if (ratio < best_ratio - 1e-12 ||
                        (ratio < best_ratio + 1e-12 &&
                         (leave < 0 || basis_[static_cast<size_t>(r)] <
                                           basis_[static_cast<size_t>(leave)]))) {
                        best_ratio = ratio;
                        leave = r;
                    }
                }
            }
            if (leave < 0) return false; // unbounded direction

            pivot(leave, enter, obj);
        }
        throw numerical_error("simplex iteration limit exceeded");
    }

    double objective_of(const Eigen::VectorXd& c) const {
        double total = 0.0;
        for (Eigen::Index r = 0; r < m_; ++r) {
            total += c[basis_[static_cast<size_t>(r)]] * T_(r, cols_);
        }
        return total;
    }

    // Drive basic artificials out of the basis after phase 1; rows that
    // cannot pivot are redundant and keep a zero artificial basic.
    void expel_artificials() {
        const double tol = tolerances().lp_pivot;
        for (Eigen::Index r = 0; r < m_; ++r) {
            if (basis_[static_cast<size_t>(r)] < first_artificial_) continue;
            Eigen::Index enter = -1;
            for (Eigen::Index j = 0; j < first_artificial_; ++j) {
                if (std::abs(T_(r, j)) > tol) {
                    enter = j;
                    break;
                }
            }
            if (enter >= 0) {
                Eigen::VectorXd dummy = Eigen::VectorXd::Zero(cols_);
                pivot(r, enter, dummy);
            }
        }
    }

    Eigen::VectorXd primal(Eigen::Index n_structural) const {
        Eigen::VectorXd y = Eigen::VectorXd::Zero(n_structural);
        for (Eigen::Index r = 0; r < m_; ++r) {
            const int j = basis_[static_cast<size_t>(r)];
            if (j < n_structural) y[j] = T_(r, cols_);
        }
        return y;
    }

    Eigen::Index columns() const { return cols_; }
    Eigen::Index first_artificial() const { return first_artificial_; }

private:
    void pivot(Eigen::Index row, Eigen::Index col, Eigen::VectorXd& obj) {
        T_.row(row) /= T_(row, col);
        for (Eigen::Index r = 0; r < m_; ++r) {
            if (r != row && T_(r, col) != 0.0) T_.row(r) -= T_(r, col) * T_.row(row);
        }
        if (obj.size() == cols_ && obj[col] != 0.0) {
            obj -= obj[col] * T_.row(row).head(cols_).transpose();
        }
        basis_[static_cast<size_t>(row)] = static_cast<int>(col);
    }

    Eigen::Index m_;
    Eigen::Index n_;
    Eigen::Index cols_ = 0;
    Eigen::Index first_artificial_ = 0;
    Eigen::MatrixXd T_;
    std::vector<int> basis_;
};

struct StandardForm {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    std::vector<int> row_kind;
    Eigen::VectorXd shift; // x = shift + y
    Eigen::Index n; // structural variables
};

StandardForm standardize(const LinearConstraintSystem& sys) {
    const Eigen::Index d = sys.dimension();
    StandardForm sf;
    sf.n = d;
    sf.shift = sys.lower;

    std::vector<Eigen::VectorXd> rows;
    std::vector<double> rhs;
    std::vector<int> kinds;

    auto push = [&](const Eigen::VectorXd& a, double b, int kind) {
        if (b < 0.0) {
            rows.push_back(-a);
            rhs.push_back(-b);
            kinds.push_back(kind == 0 ? 0 : -kind);
        } else {
            rows.push_back(a);
            rhs.push_back(b);
            kinds.push_back(kind);
        }
    };

    for (Eigen::Index r = 0; r < sys.ineq_A.rows(); ++r) {
        const Eigen::VectorXd a = sys.ineq_A.row(r).transpose();
        push(a, sys.ineq_b[r] - a.dot(sys.lower), 1);
    }
    for (Eigen::Index r = 0; r < sys.eq_A.rows(); ++r) {
        const Eigen::VectorXd a = sys.eq_A.row(r).transpose();
        push(a, sys.eq_b[r] - a.dot(sys.lower), 0);
    }
    for (Eigen::Index k = 0; k < d; ++k) {
        const double width = sys.upper[k] - sys.lower[k];
        if (width < 0.0) {
            // empty box; encode as an infeasible row
            push(Eigen::VectorXd::Zero(d), -1.0, 1);
            continue;
        }
        if (std::isfinite(width)) {
            Eigen::VectorXd a = Eigen::VectorXd::Zero(d);
            a[k] = 1.0;
            push(a, width, 1);
        }
    }

    sf.A.resize(static_cast<Eigen::Index>(rows.size()), d);
    sf.b.resize(static_cast<Eigen::Index>(rows.size()));
    for (Eigen::Index r = 0; r < sf.A.rows(); ++r) {
        sf.A.row(r) = rows[static_cast<size_t>(r)].transpose();
        sf.b[r] = rhs[static_cast<size_t>(r)];
    }
    sf.row_kind = std::move(kinds);
    return sf;
}

} // namespace

Solution maximize(const LinearConstraintSystem& sys, const Eigen::VectorXd& c) {
    if (c.size() != sys.dimension()) {
        throw structural_error("objective length does not match the system dimension");
    }
    const StandardForm sf = standardize(sys);
    Tableau tab(sf.A, sf.b, sf.row_kind);

    // phase 1: minimize the artificial sum
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(tab.columns());
    for (Eigen::Index j = tab.first_artificial(); j < tab.columns(); ++j) phase1[j] = -1.0;
    if (!tab.run(phase1, true)) {
        throw numerical_error("phase-1 simplex reported an unbounded direction");
    }
    if (tab.objective_of(phase1) < -1e-8) {
        return {Status::Infeasible, Eigen::VectorXd(), 0.0};
    }
    tab.expel_artificials();

    // phase 2: the real objective on the structural columns
    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(tab.columns());
    phase2.head(sf.n) = c;
    if (!tab.run(phase2, false)) {
        return {Status::Unbounded, Eigen::VectorXd(), kInf};
    }

    Solution sol;
    sol.status = Status::Optimal;
    sol.x = sf.shift + tab.primal(sf.n);
    sol.value = c.dot(sol.x);
    return sol;
}

std::optional<Eigen::VectorXd> find_feasible(const LinearConstraintSystem& sys) {
    const Solution sol = maximize(sys, Eigen::VectorXd::Zero(sys.dimension()));
    if (sol.status != Status::Optimal) return std::nullopt;
    return sol.x;
}

} // namespace riskconv::lp
