#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace riskconv {

// Piecewise-linear distortion g : [0,1] -> [0,1] with g(0) = 0, g(1) = 1,
// nondecreasing. Concavity is detected from the slopes at construction.
//
// Jumps (the maximum-loss and value-at-risk limits) are stored as steep
// linear ramps of width kJumpWidth so that every g stays a genuine
// piecewise-linear function.
class DistortionFunction {
public:
    static constexpr double kJumpWidth = 1e-9;

    DistortionFunction(Eigen::VectorXd breakpoints, Eigen::VectorXd values);

    static DistortionFunction identity();
    // min(t / alpha, 1)
    static DistortionFunction expected_shortfall(double alpha);
    // 0 at 0, 1 from kJumpWidth on
    static DistortionFunction maximum_loss();
    // step 0 -> 1 closing at alpha (ramp over (alpha - kJumpWidth, alpha])
    static DistortionFunction value_at_risk(double alpha);
    // sum of mass_j * min(t / alpha_j, 1) over (alpha, mass) components
    static DistortionFunction spectral(const std::vector<std::pair<double, double>>& components);

    double operator()(double t) const;
    bool concave() const { return concave_; }
    const Eigen::VectorXd& breakpoints() const { return breakpoints_; }
    const Eigen::VectorXd& values() const { return values_; }

    friend bool operator==(const DistortionFunction& a, const DistortionFunction& b) {
        return a.breakpoints_ == b.breakpoints_ && a.values_ == b.values_;
    }

private:
    Eigen::VectorXd breakpoints_; // increasing, first 0, last 1
    Eigen::VectorXd values_;      // nondecreasing, first 0, last 1
    bool concave_ = false;
};

// Lower envelope min(a, b), breakpoints include segment crossings.
DistortionFunction pointwise_min(const DistortionFunction& a, const DistortionFunction& b);

} // namespace riskconv
