#include "riskconv/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "riskconv/errors.hpp"

namespace riskconv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDualMembershipTol = 1e-9;
constexpr Eigen::Index kDistortionCoreCap = 20;

std::string format_param(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Atom order of increasing value (stable), i.e. decreasing loss last.
std::vector<Eigen::Index> ascending_order(const Position& x) {
    std::vector<Eigen::Index> order(x.size());
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return x.value(a) < x.value(b);
    });
    return order;
}

// Choquet integral of the loss -x against the capacity g(P(.)). On the
// step quantile with distinct values v_i and levels l_i this is
//   -v_m + sum_i (v_{i+1} - v_i) g(l_i),
// since P(-x >= -v_i) = P(x <= v_i) = l_i.
double choquet_of_loss(const DistortionFunction& g, const Position& x) {
    const QuantileFunction q = quantile_function(x);
    const Eigen::Index m = q.values.size();
    double total = -q.values[m - 1];
    for (Eigen::Index i = 0; i + 1 < m; ++i) {
        total += (q.values[i + 1] - q.values[i]) * g(q.levels[i]);
    }
    return total;
}

// Greedy dual weights along the descending-loss order; reproduces the
// Choquet integral and, for concave g, maximizes E_q[-x] over the core.
Eigen::VectorXd greedy_choquet_weights(const DistortionFunction& g, const Position& x) {
    const auto order = ascending_order(x);
    Eigen::VectorXd q = Eigen::VectorXd::Zero(x.size());
    double cum = 0.0;
    double gprev = 0.0;
    for (auto it = order.begin(); it != order.end(); ++it) {
        cum += x.space()->probability(*it);
        const double gcur = g(cum);
        q[*it] = gcur - gprev;
        gprev = gcur;
    }
    return q;
}

double entropic_value(double gamma, const Position& x) {
    // log-sum-exp with max shift
    const Eigen::ArrayXd expo = -gamma * x.values().array();
    const double shift = expo.maxCoeff();
    const double s = (x.space()->probabilities().array() * (expo - shift).exp()).sum();
    return (shift + std::log(s)) / gamma;
}

} // namespace

RiskMeasure RiskMeasure::expected_loss() { return RiskMeasure(MeasureKind::ExpectedLoss); }

RiskMeasure RiskMeasure::value_at_risk(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw invalid_input("VaR level must lie in (0,1]; level 0 is MaximumLoss");
    }
    RiskMeasure m(MeasureKind::ValueAtRisk);
    m.alpha_ = alpha;
    return m;
}

RiskMeasure RiskMeasure::expected_shortfall(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw invalid_input("ES level must lie in (0,1]; level 0 is MaximumLoss");
    }
    RiskMeasure m(MeasureKind::ExpectedShortfall);
    m.alpha_ = alpha;
    return m;
}

RiskMeasure RiskMeasure::entropic(double gamma) {
    if (!(gamma > 0.0)) throw invalid_input("entropic parameter must be positive");
    RiskMeasure m(MeasureKind::Entropic);
    m.gamma_ = gamma;
    return m;
}

RiskMeasure RiskMeasure::maximum_loss() { return RiskMeasure(MeasureKind::MaximumLoss); }

RiskMeasure RiskMeasure::distortion(DistortionFunction g) {
    RiskMeasure m(MeasureKind::Distortion);
    m.g_ = std::move(g);
    return m;
}

RiskMeasure RiskMeasure::spectral_mixture(std::vector<std::pair<double, double>> components) {
    RiskMeasure m(MeasureKind::SpectralMixture);
    m.g_ = DistortionFunction::spectral(components); // validates the components
    m.components_ = std::move(components);
    return m;
}

const DistortionFunction& RiskMeasure::distortion_function() const {
    if (!g_) throw unsupported_operation(name() + " carries no distortion function");
    return *g_;
}

bool RiskMeasure::is_convex() const {
    switch (kind_) {
        case MeasureKind::ValueAtRisk: return false;
        case MeasureKind::Distortion: return g_->concave();
        default: return true;
    }
}

bool RiskMeasure::is_coherent() const { return is_convex() && is_positively_homogeneous(); }

bool RiskMeasure::is_positively_homogeneous() const { return kind_ != MeasureKind::Entropic; }

bool RiskMeasure::is_comonotone_additive() const { return kind_ != MeasureKind::Entropic; }

std::string RiskMeasure::name() const {
    switch (kind_) {
        case MeasureKind::ExpectedLoss: return "EL";
        case MeasureKind::ValueAtRisk: return "VaR(" + format_param(alpha_) + ")";
        case MeasureKind::ExpectedShortfall: return "ES(" + format_param(alpha_) + ")";
        case MeasureKind::Entropic: return "Ent(" + format_param(gamma_) + ")";
        case MeasureKind::MaximumLoss: return "ML";
        case MeasureKind::Distortion: return "Distortion";
        case MeasureKind::SpectralMixture: return "Spectral";
    }
    return "?";
}

bool operator==(const RiskMeasure& a, const RiskMeasure& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
        case MeasureKind::ValueAtRisk:
        case MeasureKind::ExpectedShortfall: return a.alpha_ == b.alpha_;
        case MeasureKind::Entropic: return a.gamma_ == b.gamma_;
        case MeasureKind::Distortion:
        case MeasureKind::SpectralMixture: return *a.g_ == *b.g_;
        default: return true;
    }
}

DualVector::DualVector(SpacePtr space, Eigen::VectorXd weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
    if (!space_ || weights_.size() != space_->atom_count()) {
        throw structural_error("dual vector size does not match the space");
    }
    if ((weights_.array() < -1e-14).any()) {
        throw invalid_input("dual weights must be nonnegative");
    }
    weights_ = weights_.cwiseMax(0.0);
    const double sum = weights_.sum();
    if (std::abs(sum - 1.0) > 1e-12) {
        throw invalid_input("dual weights must sum to one within 1e-12");
    }
    weights_ /= sum;
}

Eigen::VectorXd DualVector::density() const {
    return weights_.cwiseQuotient(space_->probabilities());
}

double DualVector::expected_loss_of(const Position& x) const {
    if (!same_space(space_, x.space())) {
        throw structural_error("dual vector and position live on different spaces");
    }
    return -weights_.dot(x.values());
}

bool LinearConstraintSystem::contains(const Eigen::VectorXd& q, double tol) const {
    if (q.size() != dimension()) return false;
    if (((q - upper).array() > tol).any()) return false;
    if (((lower - q).array() > tol).any()) return false;
    if (eq_A.rows() > 0 && ((eq_A * q - eq_b).array().abs() > tol).any()) return false;
    if (ineq_A.rows() > 0 && ((ineq_A * q - ineq_b).array() > tol).any()) return false;
    return true;
}

LinearConstraintSystem simplex_constraints(const FiniteProbabilitySpace& space) {
    const Eigen::Index d = space.atom_count();
    LinearConstraintSystem sys;
    sys.lower = Eigen::VectorXd::Zero(d);
    sys.upper = Eigen::VectorXd::Ones(d);
    sys.eq_A = Eigen::MatrixXd::Ones(1, d);
    sys.eq_b = Eigen::VectorXd::Ones(1);
    sys.ineq_A = Eigen::MatrixXd(0, d);
    sys.ineq_b = Eigen::VectorXd(0);
    return sys;
}

LinearConstraintSystem intersect(const std::vector<LinearConstraintSystem>& systems) {
    if (systems.empty()) throw invalid_input("cannot intersect an empty family");
    LinearConstraintSystem out = systems.front();
    for (size_t s = 1; s < systems.size(); ++s) {
        const auto& sys = systems[s];
        if (sys.dimension() != out.dimension()) {
            throw structural_error("constraint systems have mismatched dimensions");
        }
        out.lower = out.lower.cwiseMax(sys.lower);
        out.upper = out.upper.cwiseMin(sys.upper);
        if (sys.ineq_A.rows() > 0) {
            const Eigen::Index r0 = out.ineq_A.rows();
            out.ineq_A.conservativeResize(r0 + sys.ineq_A.rows(), Eigen::NoChange);
            out.ineq_b.conservativeResize(r0 + sys.ineq_b.size());
            out.ineq_A.bottomRows(sys.ineq_A.rows()) = sys.ineq_A;
            out.ineq_b.tail(sys.ineq_b.size()) = sys.ineq_b;
        }
        for (Eigen::Index r = 0; r < sys.eq_A.rows(); ++r) {
            bool duplicate = false;
            for (Eigen::Index q = 0; q < out.eq_A.rows(); ++q) {
                if ((out.eq_A.row(q) - sys.eq_A.row(r)).cwiseAbs().maxCoeff() < 1e-14 &&
                    std::abs(out.eq_b[q] - sys.eq_b[r]) < 1e-14) {
                    duplicate = true;
                    break;
                }
            }
            if (!duplicate) {
                const Eigen::Index r0 = out.eq_A.rows();
                out.eq_A.conservativeResize(r0 + 1, Eigen::NoChange);
                out.eq_b.conservativeResize(r0 + 1);
                out.eq_A.row(r0) = sys.eq_A.row(r);
                out.eq_b[r0] = sys.eq_b[r];
            }
        }
    }
    return out;
}

double evaluate(const RiskMeasure& m, const Position& x) {
    switch (m.kind()) {
        case MeasureKind::ExpectedLoss:
            return -x.expectation();
        case MeasureKind::ValueAtRisk:
            return -left_quantile(x, m.alpha());
        case MeasureKind::ExpectedShortfall: {
            const auto q = quantile_function(x);
            return -q.lower_partial_integral(m.alpha()) / m.alpha();
        }
        case MeasureKind::Entropic:
            return entropic_value(m.gamma(), x);
        case MeasureKind::MaximumLoss:
            return -x.min_value();
        case MeasureKind::Distortion:
            return choquet_of_loss(m.distortion_function(), x);
        case MeasureKind::SpectralMixture: {
            const auto q = quantile_function(x);
            double total = 0.0;
            for (const auto& [alpha, mass] : m.components()) {
                total += mass * (-q.lower_partial_integral(alpha) / alpha);
            }
            return total;
        }
    }
    throw invalid_input("unknown measure kind");
}

SubgradientEval evaluate_with_subgradient(const RiskMeasure& m, const Position& x) {
    SubgradientEval out;
    switch (m.kind()) {
        case MeasureKind::ExpectedLoss:
            out.value = -x.expectation();
            out.gradient = -x.space()->probabilities();
            return out;
        case MeasureKind::Entropic: {
            out.value = entropic_value(m.gamma(), x);
            out.gradient = -gibbs_density(m.gamma(), x).weights();
            return out;
        }
        case MeasureKind::ValueAtRisk: {
            out.value = -left_quantile(x, m.alpha());
            out.gradient = Eigen::VectorXd::Zero(x.size());
            const auto order = ascending_order(x);
            double cum = 0.0;
            for (auto it = order.begin(); it != order.end(); ++it) {
                cum += x.space()->probability(*it);
                if (cum >= m.alpha() - 1e-12) {
                    out.gradient[*it] = -1.0;
                    break;
                }
            }
            return out;
        }
        case MeasureKind::MaximumLoss: {
            out.value = -x.min_value();
            out.gradient = Eigen::VectorXd::Zero(x.size());
            Eigen::Index argmin = 0;
            x.values().minCoeff(&argmin);
            out.gradient[argmin] = -1.0;
            return out;
        }
        case MeasureKind::ExpectedShortfall:
        case MeasureKind::Distortion:
        case MeasureKind::SpectralMixture: {
            const DistortionFunction g = distortion_of(m);
            out.gradient = -greedy_choquet_weights(g, x);
            out.value = -out.gradient.dot(-x.values());
            return out;
        }
    }
    throw invalid_input("unknown measure kind");
}

double penalty(const RiskMeasure& m, const DualVector& q) {
    const auto& space = *q.space();
    switch (m.kind()) {
        case MeasureKind::ValueAtRisk:
            throw unsupported_operation("VaR is not convex and has no penalty representation");
        case MeasureKind::Entropic: {
            double total = 0.0;
            for (Eigen::Index k = 0; k < q.weights().size(); ++k) {
                const double p = space.probability(k);
                const double r = q.weights()[k] / p;
                if (r > 0.0) total += p * r * std::log(r);
            }
            return std::max(total, 0.0) / m.gamma();
        }
        case MeasureKind::ExpectedLoss:
            return (q.weights() - space.probabilities()).cwiseAbs().maxCoeff() <= kDualMembershipTol
                       ? 0.0
                       : kInf;
        case MeasureKind::ExpectedShortfall: {
            // density bound 1/alpha is inclusive
            const Eigen::VectorXd cap = space.probabilities() / m.alpha();
            return ((q.weights() - cap).array() <= kDualMembershipTol).all() ? 0.0 : kInf;
        }
        case MeasureKind::MaximumLoss:
            return 0.0;
        case MeasureKind::Distortion:
        case MeasureKind::SpectralMixture: {
            const DistortionFunction& g = m.distortion_function();
            if (!g.concave()) {
                throw unsupported_operation("non-concave distortion is not convex");
            }
            const Eigen::Index d = space.atom_count();
            if (d > kDistortionCoreCap) {
                throw unsupported_operation("distortion core membership capped at 20 atoms");
            }
            for (uint64_t mask = 1; mask + 1 < (uint64_t{1} << d); ++mask) {
                double qa = 0.0;
                double pa = 0.0;
                for (Eigen::Index k = 0; k < d; ++k) {
                    if (mask & (uint64_t{1} << k)) {
                        qa += q.weights()[k];
                        pa += space.probability(k);
                    }
                }
                if (qa > g(pa) + kDualMembershipTol) return kInf;
            }
            return 0.0;
        }
    }
    throw invalid_input("unknown measure kind");
}

LinearConstraintSystem dual_set_halfspaces(const RiskMeasure& m,
                                           const FiniteProbabilitySpace& space) {
    if (!m.is_coherent()) {
        throw unsupported_operation(m.name() + " is not coherent; no dual-set halfspaces");
    }
    LinearConstraintSystem sys = simplex_constraints(space);
    const Eigen::Index d = space.atom_count();
    switch (m.kind()) {
        case MeasureKind::ExpectedLoss:
            sys.lower = space.probabilities();
            sys.upper = space.probabilities();
            return sys;
        case MeasureKind::ExpectedShortfall:
            sys.upper = (space.probabilities() / m.alpha()).cwiseMin(1.0);
            return sys;
        case MeasureKind::MaximumLoss:
            return sys;
        case MeasureKind::Distortion:
        case MeasureKind::SpectralMixture: {
            if (d > kDistortionCoreCap) {
                throw unsupported_operation("distortion core halfspace export capped at 20 atoms");
            }
            const DistortionFunction& g = m.distortion_function();
            std::vector<std::pair<Eigen::VectorXd, double>> rows;
            for (uint64_t mask = 1; mask + 1 < (uint64_t{1} << d); ++mask) {
                double pa = 0.0;
                for (Eigen::Index k = 0; k < d; ++k) {
                    if (mask & (uint64_t{1} << k)) pa += space.probability(k);
                }
                const double bound = g(pa);
                if (bound >= 1.0 - 1e-15) continue; // implied by the simplex row
                Eigen::VectorXd row = Eigen::VectorXd::Zero(d);
                for (Eigen::Index k = 0; k < d; ++k) {
                    if (mask & (uint64_t{1} << k)) row[k] = 1.0;
                }
                rows.emplace_back(std::move(row), bound);
            }
            sys.ineq_A.resize(static_cast<Eigen::Index>(rows.size()), d);
            sys.ineq_b.resize(static_cast<Eigen::Index>(rows.size()));
            for (Eigen::Index r = 0; r < sys.ineq_A.rows(); ++r) {
                sys.ineq_A.row(r) = rows[static_cast<size_t>(r)].first;
                sys.ineq_b[r] = rows[static_cast<size_t>(r)].second;
            }
            // singleton rows double as upper bounds; keep them as rows for clarity
            return sys;
        }
        default:
            throw unsupported_operation(m.name() + " has no halfspace export");
    }
}

bool acceptance_check(const RiskMeasure& m, const Position& x) {
    return evaluate(m, x) <= 1e-12;
}

SubgradientFace subgradient_face(const RiskMeasure& m, const Position& x) {
    if (!m.is_convex()) {
        throw unsupported_operation(m.name() + " is not convex; no subgradients");
    }
    SubgradientFace out;
    if (m.kind() == MeasureKind::Entropic) {
        out.unique_point = gibbs_density(m.gamma(), x);
        return out;
    }
    if (m.kind() == MeasureKind::ExpectedLoss) {
        out.unique_point = DualVector(x.space(), x.space()->probabilities());
    }
    LinearConstraintSystem face = dual_set_halfspaces(m, *x.space());
    const Eigen::Index r0 = face.eq_A.rows();
    face.eq_A.conservativeResize(r0 + 1, Eigen::NoChange);
    face.eq_b.conservativeResize(r0 + 1);
    face.eq_A.row(r0) = -x.values().transpose();
    face.eq_b[r0] = evaluate(m, x);
    out.face = std::move(face);
    return out;
}

DualVector gibbs_density(double gamma, const Position& x) {
    const Eigen::ArrayXd expo = -gamma * x.values().array();
    const double shift = expo.maxCoeff();
    Eigen::VectorXd w = (x.space()->probabilities().array() * (expo - shift).exp()).matrix();
    w /= w.sum();
    return DualVector(x.space(), std::move(w));
}

DualVector choquet_argmax(const RiskMeasure& m, const Position& x) {
    if (m.kind() == MeasureKind::ExpectedLoss) {
        return DualVector(x.space(), x.space()->probabilities());
    }
    if (!m.is_comonotone_additive()) {
        throw unsupported_operation(m.name() + " is not comonotone additive");
    }
    return DualVector(x.space(), greedy_choquet_weights(distortion_of(m), x));
}

DistortionFunction distortion_of(const RiskMeasure& m) {
    switch (m.kind()) {
        case MeasureKind::ExpectedLoss: return DistortionFunction::identity();
        case MeasureKind::ExpectedShortfall: return DistortionFunction::expected_shortfall(m.alpha());
        case MeasureKind::MaximumLoss: return DistortionFunction::maximum_loss();
        case MeasureKind::ValueAtRisk: return DistortionFunction::value_at_risk(m.alpha());
        case MeasureKind::Distortion:
        case MeasureKind::SpectralMixture: return m.distortion_function();
        case MeasureKind::Entropic:
            throw unsupported_operation("entropic measures are not comonotone additive");
    }
    throw invalid_input("unknown measure kind");
}

} // namespace riskconv
