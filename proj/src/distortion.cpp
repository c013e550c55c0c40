#include "riskconv/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "riskconv/errors.hpp"

namespace riskconv {

namespace {
constexpr double kMonotoneTol = 1e-14;
constexpr double kConcaveTol = 1e-12;
} // namespace

DistortionFunction::DistortionFunction(Eigen::VectorXd breakpoints, Eigen::VectorXd values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() != values_.size() || breakpoints_.size() < 2) {
        throw invalid_input("distortion needs matching breakpoint/value lists of length >= 2");
    }
    if (breakpoints_[0] != 0.0 || breakpoints_[breakpoints_.size() - 1] != 1.0) {
        throw invalid_input("distortion breakpoints must start at 0 and end at 1");
    }
    if (std::abs(values_[0]) > 1e-14 || std::abs(values_[values_.size() - 1] - 1.0) > 1e-12) {
        throw invalid_input("distortion must satisfy g(0) = 0 and g(1) = 1");
    }
    values_[0] = 0.0;
    values_[values_.size() - 1] = 1.0;
    for (Eigen::Index k = 1; k < breakpoints_.size(); ++k) {
        if (breakpoints_[k] <= breakpoints_[k - 1]) {
            throw invalid_input("distortion breakpoints must be strictly increasing");
        }
        if (values_[k] < values_[k - 1] - kMonotoneTol) {
            throw invalid_input("distortion values must be nondecreasing");
        }
    }
    concave_ = true;
    double prev_slope = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 1; k < breakpoints_.size(); ++k) {
        const double slope = (values_[k] - values_[k - 1]) / (breakpoints_[k] - breakpoints_[k - 1]);
        if (slope > prev_slope + kConcaveTol) {
            concave_ = false;
            break;
        }
        prev_slope = slope;
    }
}

DistortionFunction DistortionFunction::identity() {
    Eigen::VectorXd t(2), v(2);
    t << 0.0, 1.0;
    v << 0.0, 1.0;
    return DistortionFunction(t, v);
}

DistortionFunction DistortionFunction::expected_shortfall(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw invalid_input("expected shortfall level must lie in (0,1]");
    }
    if (alpha == 1.0) return identity();
    Eigen::VectorXd t(3), v(3);
    t << 0.0, alpha, 1.0;
    v << 0.0, 1.0, 1.0;
    return DistortionFunction(t, v);
}

DistortionFunction DistortionFunction::maximum_loss() {
    Eigen::VectorXd t(3), v(3);
    t << 0.0, kJumpWidth, 1.0;
    v << 0.0, 1.0, 1.0;
    return DistortionFunction(t, v);
}

DistortionFunction DistortionFunction::value_at_risk(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw invalid_input("value at risk level must lie in (0,1]");
    }
    if (alpha <= kJumpWidth) return maximum_loss();
    if (alpha == 1.0) {
        Eigen::VectorXd t(3), v(3);
        t << 0.0, 1.0 - kJumpWidth, 1.0;
        v << 0.0, 0.0, 1.0;
        return DistortionFunction(t, v);
    }
    Eigen::VectorXd t(4), v(4);
    t << 0.0, alpha - kJumpWidth, alpha, 1.0;
    v << 0.0, 0.0, 1.0, 1.0;
    return DistortionFunction(t, v);
}

DistortionFunction DistortionFunction::spectral(
    const std::vector<std::pair<double, double>>& components) {
    if (components.empty()) {
        throw invalid_input("spectral mixture needs at least one component");
    }
    double mass = 0.0;
    std::vector<double> knots{0.0, 1.0};
    for (const auto& [alpha, m] : components) {
        if (!(alpha > 0.0) || alpha > 1.0) {
            throw invalid_input("spectral component level must lie in (0,1]");
        }
        if (m < 0.0) throw invalid_input("spectral component mass must be nonnegative");
        mass += m;
        knots.push_back(alpha);
    }
    if (std::abs(mass - 1.0) > 1e-12) {
        throw invalid_input("spectral component masses must sum to one");
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    Eigen::VectorXd t(static_cast<Eigen::Index>(knots.size()));
    Eigen::VectorXd v(t.size());
    for (Eigen::Index k = 0; k < t.size(); ++k) {
        t[k] = knots[static_cast<size_t>(k)];
        double g = 0.0;
        for (const auto& [alpha, m] : components) g += m * std::min(t[k] / alpha, 1.0);
        v[k] = g;
    }
    v[v.size() - 1] = 1.0;
    return DistortionFunction(t, v);
}

double DistortionFunction::operator()(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    Eigen::Index lo = 0;
    Eigen::Index hi = breakpoints_.size() - 1;
    while (hi - lo > 1) {
        const Eigen::Index mid = (lo + hi) / 2;
        if (breakpoints_[mid] <= t) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double w = (t - breakpoints_[lo]) / (breakpoints_[hi] - breakpoints_[lo]);
    return values_[lo] + w * (values_[hi] - values_[lo]);
}

DistortionFunction pointwise_min(const DistortionFunction& a, const DistortionFunction& b) {
    std::vector<double> knots;
    knots.reserve(static_cast<size_t>(a.breakpoints().size() + b.breakpoints().size()));
    for (Eigen::Index k = 0; k < a.breakpoints().size(); ++k) knots.push_back(a.breakpoints()[k]);
    for (Eigen::Index k = 0; k < b.breakpoints().size(); ++k) knots.push_back(b.breakpoints()[k]);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    // both functions are linear between adjacent merged knots, so the
    // envelope only needs extra breakpoints at segment crossings
    std::vector<double> refined;
    refined.push_back(knots.front());
    for (size_t k = 0; k + 1 < knots.size(); ++k) {
        const double t0 = knots[k];
        const double t1 = knots[k + 1];
        const double d0 = a(t0) - b(t0);
        const double d1 = a(t1) - b(t1);
        if ((d0 > 0.0 && d1 < 0.0) || (d0 < 0.0 && d1 > 0.0)) {
            const double cross = t0 + (t1 - t0) * d0 / (d0 - d1);
            if (cross > t0 + 1e-15 && cross < t1 - 1e-15) refined.push_back(cross);
        }
        refined.push_back(t1);
    }

    Eigen::VectorXd t(static_cast<Eigen::Index>(refined.size()));
    Eigen::VectorXd v(t.size());
    for (Eigen::Index k = 0; k < t.size(); ++k) {
        t[k] = refined[static_cast<size_t>(k)];
        v[k] = std::min(a(t[k]), b(t[k]));
    }
    v[0] = 0.0;
    v[v.size() - 1] = 1.0;
    return DistortionFunction(t, v);
}

} // namespace riskconv
