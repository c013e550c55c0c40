#pragma once

#include <Eigen/Dense>
#include <memory>

namespace riskconv {

// Finite discrete probability space: atoms with strictly positive
// probabilities summing to one. Immutable after construction.
class FiniteProbabilitySpace {
public:
    // Requires all probabilities > 0 and |sum - 1| <= 1e-12. The vector is
    // renormalized to sum exactly one; the applied correction is recorded.
    explicit FiniteProbabilitySpace(Eigen::VectorXd probabilities);

    static std::shared_ptr<const FiniteProbabilitySpace> equiprobable(Eigen::Index atom_count);
    static std::shared_ptr<const FiniteProbabilitySpace> make(Eigen::VectorXd probabilities);

    Eigen::Index atom_count() const { return probabilities_.size(); }
    const Eigen::VectorXd& probabilities() const { return probabilities_; }
    double probability(Eigen::Index atom) const { return probabilities_[atom]; }
    double normalization_correction() const { return normalization_correction_; }
    bool is_equiprobable(double tol = 1e-12) const;

    friend bool operator==(const FiniteProbabilitySpace& a, const FiniteProbabilitySpace& b) {
        return a.probabilities_.size() == b.probabilities_.size() &&
               a.probabilities_ == b.probabilities_;
    }

private:
    Eigen::VectorXd probabilities_;
    double normalization_correction_ = 0.0;
};

using SpacePtr = std::shared_ptr<const FiniteProbabilitySpace>;

// A real payoff per atom (an L-infinity element of the space).
class Position {
public:
    Position(SpacePtr space, Eigen::VectorXd values);

    const Eigen::VectorXd& values() const { return values_; }
    const SpacePtr& space() const { return space_; }
    Eigen::Index size() const { return values_.size(); }
    double value(Eigen::Index atom) const { return values_[atom]; }

    double expectation() const { return space_->probabilities().dot(values_); }
    double min_value() const { return values_.minCoeff(); }
    double max_value() const { return values_.maxCoeff(); }
    double sup_norm() const { return values_.cwiseAbs().maxCoeff(); }

    Position with_values(Eigen::VectorXd v) const { return Position(space_, std::move(v)); }

private:
    SpacePtr space_;
    Eigen::VectorXd values_;
};

// Throws structural_error unless both positions live on the same space
// (pointer identity or structural equality).
void require_same_space(const Position& x, const Position& y);
bool same_space(const SpacePtr& a, const SpacePtr& b);

Position operator+(const Position& x, const Position& y);
Position operator-(const Position& x, const Position& y);
Position operator*(double scale, const Position& x);
Position operator+(const Position& x, double constant);

// Left-continuous step representation of the left quantile function:
// F^{-1}(alpha) = values[k] for alpha in (levels[k-1], levels[k]].
struct QuantileFunction {
    Eigen::VectorXd levels; // strictly increasing, in (0,1], back() == 1
    Eigen::VectorXd values; // strictly increasing after tie merging

    double operator()(double alpha) const; // left quantile at alpha in (0,1]
    // Integral of F^{-1} over (0, alpha].
    double lower_partial_integral(double alpha) const;
    // Integral of F^{-1} over (1-beta, 1] (the upper beta-tail of the quantile).
    double upper_tail_integral(double beta) const;
};

QuantileFunction quantile_function(const Position& x);

// P(X <= t); right-continuous in t.
double cdf(const Position& x, double t);

// inf{ t : cdf(x,t) >= alpha } for alpha in (0,1]. At a level exactly equal
// to an accumulated-probability breakpoint the lower value is returned.
double left_quantile(const Position& x, double alpha);

// E[(X - t)^+], the upper partial moment at threshold t.
double upper_partial_moment(const Position& x, double t);

// True iff E[f(X)] <= E[f(Y)] for every increasing convex f. Checked as
// E[(X-t)^+] <= E[(Y-t)^+] at all atom values of X and Y, which suffices
// because t -> E[(X-t)^+] is piecewise linear with breakpoints at atom values.
bool ssd_dominates(const Position& x, const Position& y, double tol = 1e-9);

// True iff (X(w)-X(w'))(Y(w)-Y(w')) >= 0 over all atom pairs; ties count
// as comonotone. Differences below tol * max(1, sup_norm) are ties.
bool is_comonotone_pair(const Position& x, const Position& y, double tol = 1e-12);

// Position constant on each level set of z, equal there to the
// probability-weighted average of x. SSD-dominates x.
Position conditional_expectation_given(const Position& x, const Position& z);

} // namespace riskconv
