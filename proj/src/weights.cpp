#include "riskconv/weights.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "riskconv/errors.hpp"

namespace riskconv {

namespace {
constexpr double kMassTol = 1e-12;
}

WeightScheme::WeightScheme(std::vector<std::pair<int, double>> entries,
                           std::optional<GeometricTail> tail, double truncation_epsilon)
    : entries_(std::move(entries)), tail_(tail), truncation_epsilon_(truncation_epsilon) {
    if (!(truncation_epsilon_ > 0.0)) {
        throw invalid_input("truncation epsilon must be positive");
    }
    std::set<int> seen;
    double explicit_mass = 0.0;
    for (const auto& [index, weight] : entries_) {
        if (!(weight > 0.0) || weight > 1.0) {
            throw invalid_input("weights must lie in (0,1], got " + std::to_string(weight));
        }
        if (!seen.insert(index).second) {
            throw invalid_input("duplicate weight index " + std::to_string(index));
        }
        explicit_mass += weight;
    }
    if (explicit_mass > 1.0 + kMassTol) {
        throw invalid_input("weights sum above one");
    }

    support_ = entries_;
    if (tail_) {
        if (!(tail_->ratio > 0.0) || tail_->ratio >= 1.0) {
            throw invalid_input("geometric tail ratio must lie in (0,1)");
        }
        const double tail_mass = 1.0 - explicit_mass;
        if (tail_mass <= kMassTol) {
            throw invalid_input("no mass left for the geometric tail");
        }
        const double r = tail_->ratio;
        const double a = tail_mass * (1.0 - r); // first tail weight
        // keep n terms until the remaining mass a r^n / (1-r) drops below epsilon
        double remaining = tail_mass;
        double w = a;
        int index = tail_->first_index;
        while (remaining > truncation_epsilon_) {
            if (seen.count(index)) {
                throw invalid_input("geometric tail collides with explicit index " +
                                    std::to_string(index));
            }
            support_.emplace_back(index, w);
            remaining -= w;
            w *= r;
            ++index;
        }
        discarded_mass_ = std::max(remaining, 0.0);
    } else {
        if (std::abs(explicit_mass - 1.0) > kMassTol) {
            throw invalid_input("explicit weights must sum to one within 1e-12");
        }
    }
    if (support_.empty()) {
        throw invalid_input("weight scheme has empty support");
    }
    std::sort(support_.begin(), support_.end());

    double kept = 0.0;
    for (const auto& [index, weight] : support_) kept += weight;
    renormalization_factor_ = 1.0 / kept;
    for (auto& [index, weight] : support_) weight *= renormalization_factor_;
}

WeightScheme WeightScheme::uniform(int count) {
    if (count <= 0) throw invalid_input("uniform scheme needs a positive count");
    std::vector<std::pair<int, double>> entries;
    entries.reserve(static_cast<size_t>(count));
    for (int i = 1; i <= count; ++i) entries.emplace_back(i, 1.0 / count);
    return WeightScheme(std::move(entries));
}

double WeightScheme::weight_of(int index) const {
    for (const auto& [i, w] : support_) {
        if (i == index) return w;
    }
    return 0.0;
}

double WeightScheme::largest_weight() const {
    double best = 0.0;
    for (const auto& [i, w] : support_) best = std::max(best, w);
    return best;
}

} // namespace riskconv
