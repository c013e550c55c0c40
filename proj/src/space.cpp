#include "riskconv/space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "riskconv/errors.hpp"

namespace riskconv {

namespace {
constexpr double kProbabilitySumTol = 1e-12;
}

FiniteProbabilitySpace::FiniteProbabilitySpace(Eigen::VectorXd probabilities)
    : probabilities_(std::move(probabilities)) {
    if (probabilities_.size() == 0) {
        throw invalid_input("probability space needs at least one atom");
    }
    if ((probabilities_.array() <= 0.0).any()) {
        throw invalid_input("all atom probabilities must be strictly positive");
    }
    const double sum = probabilities_.sum();
    if (std::abs(sum - 1.0) > kProbabilitySumTol) {
        throw invalid_input("atom probabilities must sum to one within 1e-12, got sum " +
                            std::to_string(sum));
    }
    normalization_correction_ = sum - 1.0;
    probabilities_ /= sum;
}

SpacePtr FiniteProbabilitySpace::equiprobable(Eigen::Index atom_count) {
    if (atom_count <= 0) {
        throw invalid_input("equiprobable space needs a positive atom count");
    }
    return std::make_shared<const FiniteProbabilitySpace>(
        Eigen::VectorXd::Constant(atom_count, 1.0 / static_cast<double>(atom_count)));
}

SpacePtr FiniteProbabilitySpace::make(Eigen::VectorXd probabilities) {
    return std::make_shared<const FiniteProbabilitySpace>(std::move(probabilities));
}

bool FiniteProbabilitySpace::is_equiprobable(double tol) const {
    const double uniform = 1.0 / static_cast<double>(probabilities_.size());
    return (probabilities_.array() - uniform).abs().maxCoeff() <= tol;
}

Position::Position(SpacePtr space, Eigen::VectorXd values)
    : space_(std::move(space)), values_(std::move(values)) {
    if (!space_) {
        throw invalid_input("position needs a probability space");
    }
    if (values_.size() != space_->atom_count()) {
        throw structural_error("position has " + std::to_string(values_.size()) +
                               " values but the space has " +
                               std::to_string(space_->atom_count()) + " atoms");
    }
    if (!values_.allFinite()) {
        throw invalid_input("position values must all be finite");
    }
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

void require_same_space(const Position& x, const Position& y) {
    if (!same_space(x.space(), y.space())) {
        throw structural_error("positions live on different probability spaces");
    }
}

Position operator+(const Position& x, const Position& y) {
    require_same_space(x, y);
    return Position(x.space(), x.values() + y.values());
}

Position operator-(const Position& x, const Position& y) {
    require_same_space(x, y);
    return Position(x.space(), x.values() - y.values());
}

Position operator*(double scale, const Position& x) {
    return Position(x.space(), scale * x.values());
}

Position operator+(const Position& x, double constant) {
    return Position(x.space(), x.values().array() + constant);
}

double QuantileFunction::operator()(double alpha) const {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw invalid_input("quantile level must lie in (0,1]");
    }
    // First level with cumulative probability >= alpha; the slack absorbs
    // roundoff in accumulated sums so breakpoint levels resolve downward.
    for (Eigen::Index k = 0; k < levels.size(); ++k) {
        if (levels[k] >= alpha - 1e-12) return values[k];
    }
    return values[values.size() - 1];
}

double QuantileFunction::lower_partial_integral(double alpha) const {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw invalid_input("quantile level must lie in (0,1]");
    }
    double total = 0.0;
    double prev = 0.0;
    for (Eigen::Index k = 0; k < levels.size(); ++k) {
        const double hi = std::min(levels[k], alpha);
        if (hi > prev) total += values[k] * (hi - prev);
        if (levels[k] >= alpha) break;
        prev = levels[k];
    }
    return total;
}

double QuantileFunction::upper_tail_integral(double beta) const {
    if (beta < 0.0 || beta > 1.0 + 1e-12) {
        throw invalid_input("tail mass must lie in [0,1]");
    }
    beta = std::min(beta, 1.0);
    if (beta <= 0.0) return 0.0;
    const double cut = 1.0 - beta;
    double total = 0.0;
    double prev = 0.0;
    for (Eigen::Index k = 0; k < levels.size(); ++k) {
        const double lo = std::max(prev, cut);
        if (levels[k] > lo) total += values[k] * (levels[k] - lo);
        prev = levels[k];
    }
    return total;
}

QuantileFunction quantile_function(const Position& x) {
    const Eigen::Index d = x.size();
    std::vector<Eigen::Index> order(d);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return x.value(a) < x.value(b);
    });

    std::vector<double> levels;
    std::vector<double> values;
    double cum = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
        const double v = x.value(order[k]);
        cum += x.space()->probability(order[k]);
        if (!values.empty() && values.back() == v) {
            levels.back() = cum; // merge tied values into one step
        } else {
            levels.push_back(cum);
            values.push_back(v);
        }
    }
    levels.back() = 1.0;

    QuantileFunction q;
    q.levels = Eigen::Map<const Eigen::VectorXd>(levels.data(), static_cast<Eigen::Index>(levels.size()));
    q.values = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    return q;
}

double cdf(const Position& x, double t) {
    if (!std::isfinite(t)) {
        throw invalid_input("cdf threshold must be finite");
    }
    double mass = 0.0;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        if (x.value(k) <= t) mass += x.space()->probability(k);
    }
    return mass;
}

double left_quantile(const Position& x, double alpha) {
    return quantile_function(x)(alpha);
}

double upper_partial_moment(const Position& x, double t) {
    double total = 0.0;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        const double excess = x.value(k) - t;
        if (excess > 0.0) total += x.space()->probability(k) * excess;
    }
    return total;
}

bool ssd_dominates(const Position& x, const Position& y, double tol) {
    require_same_space(x, y);
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        const double t = x.value(k);
        if (upper_partial_moment(x, t) > upper_partial_moment(y, t) + tol) return false;
    }
    for (Eigen::Index k = 0; k < y.size(); ++k) {
        const double t = y.value(k);
        if (upper_partial_moment(x, t) > upper_partial_moment(y, t) + tol) return false;
    }
    return true;
}

bool is_comonotone_pair(const Position& x, const Position& y, double tol) {
    require_same_space(x, y);
    const double tx = tol * std::max(1.0, x.sup_norm());
    const double ty = tol * std::max(1.0, y.sup_norm());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        for (Eigen::Index j = i + 1; j < x.size(); ++j) {
            const double dx = x.value(i) - x.value(j);
            const double dy = y.value(i) - y.value(j);
            if ((dx > tx && dy < -ty) || (dx < -tx && dy > ty)) return false;
        }
    }
    return true;
}

Position conditional_expectation_given(const Position& x, const Position& z) {
    require_same_space(x, z);
    std::map<double, std::pair<double, double>> groups; // z value -> (mass, weighted sum)
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        auto& g = groups[z.value(k)];
        g.first += x.space()->probability(k);
        g.second += x.space()->probability(k) * x.value(k);
    }
    Eigen::VectorXd out(x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        const auto& g = groups[z.value(k)];
        out[k] = g.second / g.first;
    }
    return Position(x.space(), std::move(out));
}

} // namespace riskconv
