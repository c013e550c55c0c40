#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "riskconv/distortion.hpp"
#include "riskconv/space.hpp"

namespace riskconv {

enum class MeasureKind {
    ExpectedLoss,
    ValueAtRisk,
    ExpectedShortfall,
    Entropic,
    MaximumLoss,
    Distortion,
    SpectralMixture,
};

// Tagged description of one risk measure with its parameters.
class RiskMeasure {
public:
    static RiskMeasure expected_loss();
    static RiskMeasure value_at_risk(double alpha);
    // alpha in (0,1]; level 0 is rejected, use maximum_loss instead
    static RiskMeasure expected_shortfall(double alpha);
    static RiskMeasure entropic(double gamma);
    static RiskMeasure maximum_loss();
    static RiskMeasure distortion(DistortionFunction g);
    // components: (alpha in (0,1], mass >= 0), masses summing to one
    static RiskMeasure spectral_mixture(std::vector<std::pair<double, double>> components);

    MeasureKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double gamma() const { return gamma_; }
    const DistortionFunction& distortion_function() const;
    const std::vector<std::pair<double, double>>& components() const { return components_; }

    bool is_convex() const;                 // every kind except VaR and non-concave distortions
    bool is_coherent() const;               // convex and positively homogeneous
    bool is_positively_homogeneous() const; // every kind except Entropic
    bool is_comonotone_additive() const;    // every kind except Entropic
    std::string name() const;

    friend bool operator==(const RiskMeasure& a, const RiskMeasure& b);

private:
    explicit RiskMeasure(MeasureKind kind) : kind_(kind) {}

    MeasureKind kind_;
    double alpha_ = 0.0;
    double gamma_ = 0.0;
    std::optional<DistortionFunction> g_;
    std::vector<std::pair<double, double>> components_;
};

// Probability vector absolutely continuous w.r.t. the base probabilities.
class DualVector {
public:
    DualVector(SpacePtr space, Eigen::VectorXd weights);

    const Eigen::VectorXd& weights() const { return weights_; }
    const SpacePtr& space() const { return space_; }
    Eigen::VectorXd density() const; // weights ./ base probabilities
    double expected_loss_of(const Position& x) const; // E_q[-X]

private:
    SpacePtr space_;
    Eigen::VectorXd weights_;
};

// Linear constraint system over dual vectors q:
//   ineq_A q <= ineq_b,  eq_A q = eq_b,  lower <= q <= upper.
// Every system carries the simplex constraints (sum q = 1, bounds in [0,1]).
struct LinearConstraintSystem {
    Eigen::MatrixXd ineq_A;
    Eigen::VectorXd ineq_b;
    Eigen::MatrixXd eq_A;
    Eigen::VectorXd eq_b;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    Eigen::Index dimension() const { return lower.size(); }
    bool contains(const Eigen::VectorXd& q, double tol = 1e-9) const;
};

LinearConstraintSystem simplex_constraints(const FiniteProbabilitySpace& space);
LinearConstraintSystem intersect(const std::vector<LinearConstraintSystem>& systems);

// Risk value of x under the measure. ES integrates the step quantile
// exactly; distortion kinds use the Choquet formula; spectral mixtures sum
// weighted ES values.
double evaluate(const RiskMeasure& m, const Position& x);

struct SubgradientEval {
    double value;
    Eigen::VectorXd gradient; // d value / d x_k (a subgradient for kinked kinds)
};
SubgradientEval evaluate_with_subgradient(const RiskMeasure& m, const Position& x);

// Minimal penalty of the dual vector. Entropic uses relative entropy with
// 0 log 0 = 0; coherent kinds return 0 inside the dual set (boundary
// inclusive) and +infinity outside. VaR is rejected.
double penalty(const RiskMeasure& m, const DualVector& q);

// Halfspace description of the dual set of a coherent measure. Distortion
// cores enumerate all atom subsets and are capped at 20 atoms.
LinearConstraintSystem dual_set_halfspaces(const RiskMeasure& m, const FiniteProbabilitySpace& space);

// True iff evaluate(m, x) <= 0 (within 1e-12 for roundoff at the boundary).
bool acceptance_check(const RiskMeasure& m, const Position& x);

// Argmax face of a convex measure at x. Coherent kinds carry the halfspace
// system of the face; Entropic and ExpectedLoss carry the unique point.
struct SubgradientFace {
    std::optional<LinearConstraintSystem> face;
    std::optional<DualVector> unique_point;
};
SubgradientFace subgradient_face(const RiskMeasure& m, const Position& x);

// Gibbs density q_k proportional to p_k exp(-gamma x_k); the unique
// entropic subgradient.
DualVector gibbs_density(double gamma, const Position& x);

// A maximizer of E_q[-x] over the dual set of a comonotone coherent kind,
// built greedily along the decreasing rearrangement of x.
DualVector choquet_argmax(const RiskMeasure& m, const Position& x);

// Distortion function of a comonotone-additive kind. Entropic is rejected.
DistortionFunction distortion_of(const RiskMeasure& m);

} // namespace riskconv
