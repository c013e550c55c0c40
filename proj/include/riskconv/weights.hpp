#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace riskconv {

// Parametric geometric tail: weights a * ratio^(i - first_index) for
// i >= first_index, where a is set so the tail carries exactly the mass
// left over by the explicit entries.
struct GeometricTail {
    double ratio;
    int first_index;
};

// Countable weighting scheme with finite effective support. Explicit
// entries plus an optional geometric tail must carry total mass one; the
// tail is truncated once its remaining mass drops below the truncation
// epsilon and the kept weights are renormalized to sum exactly one.
class WeightScheme {
public:
    explicit WeightScheme(std::vector<std::pair<int, double>> entries,
                          std::optional<GeometricTail> tail = std::nullopt,
                          double truncation_epsilon = 1e-10);

    static WeightScheme uniform(int count); // indices 1..count, weight 1/count each

    // finite effective support: (index, weight) sorted by index, weights
    // summing to one exactly after renormalization
    const std::vector<std::pair<int, double>>& support() const { return support_; }
    std::size_t support_size() const { return support_.size(); }
    double weight_of(int index) const;
    double largest_weight() const;

    double discarded_mass() const { return discarded_mass_; }
    double renormalization_factor() const { return renormalization_factor_; }
    double truncation_epsilon() const { return truncation_epsilon_; }

    const std::vector<std::pair<int, double>>& explicit_entries() const { return entries_; }
    const std::optional<GeometricTail>& tail() const { return tail_; }

private:
    std::vector<std::pair<int, double>> entries_;
    std::optional<GeometricTail> tail_;
    double truncation_epsilon_;
    std::vector<std::pair<int, double>> support_;
    double discarded_mass_ = 0.0;
    double renormalization_factor_ = 1.0;
};

} // namespace riskconv
