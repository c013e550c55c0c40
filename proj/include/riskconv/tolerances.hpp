#pragma once

#include <cstdlib>

namespace riskconv {

// Solver tolerances. RISKCONV_TOLERANCE_OVERRIDE (a positive float) scales
// the solver-side entries uniformly; structural tolerances stay fixed.
struct Tolerances {
    double lp_pivot = 1e-10;
    double pg_stationarity = 1e-10;
    double oracle_objective = 1e-6;
    double divergence_offset = 1e6;
};

inline const Tolerances& tolerances() {
    static const Tolerances tols = [] {
        Tolerances t;
        if (const char* env = std::getenv("RISKCONV_TOLERANCE_OVERRIDE")) {
            const double factor = std::atof(env);
            if (factor > 0.0) {
                t.lp_pivot *= factor;
                t.pg_stationarity *= factor;
                t.oracle_objective *= factor;
            }
        }
        return t;
    }();
    return tols;
}

} // namespace riskconv
