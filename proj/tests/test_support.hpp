#pragma once

// Shared generators and small independent oracles for the test suites.

#include <algorithm>
#include <random>
#include <vector>

#include "riskconv/space.hpp"

namespace riskconv::testing {

inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64(seed); }

inline Position random_position(const SpacePtr& space, std::mt19937_64& gen,
                                double lo = -5.0, double hi = 5.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Eigen::VectorXd v(space->atom_count());
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = dist(gen);
    return Position(space, v);
}

inline SpacePtr random_space(Eigen::Index atoms, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> dist(0.05, 1.0);
    Eigen::VectorXd p(atoms);
    for (Eigen::Index k = 0; k < atoms; ++k) p[k] = dist(gen);
    p /= p.sum();
    return FiniteProbabilitySpace::make(p);
}

// Comonotone pair sharing a common ranking: y = increasing transform of x.
inline std::pair<Position, Position> random_comonotone_pair(const SpacePtr& space,
                                                            std::mt19937_64& gen) {
    Position x = random_position(space, gen);
    std::uniform_real_distribution<double> slope(0.0, 2.0);
    std::uniform_real_distribution<double> shift(-1.0, 1.0);
    const double a = slope(gen);
    const double b = shift(gen);
    Eigen::VectorXd y = (a * x.values().array() + b).matrix();
    // kink makes the transform nonlinear but still nondecreasing
    const double kink = x.expectation();
    for (Eigen::Index k = 0; k < y.size(); ++k) {
        if (x.value(k) > kink) y[k] += 0.5 * (x.value(k) - kink);
    }
    return {x, Position(space, y)};
}

// Sort-and-accumulate quantile oracle, independent of QuantileFunction.
inline double quantile_by_sorting(const Position& x, double alpha) {
    std::vector<std::pair<double, double>> atoms(x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        atoms[k] = {x.value(k), x.space()->probability(k)};
    }
    std::sort(atoms.begin(), atoms.end());
    double cum = 0.0;
    for (const auto& [value, prob] : atoms) {
        cum += prob;
        if (cum >= alpha - 1e-12) return value;
    }
    return atoms.back().first;
}

} // namespace riskconv::testing
