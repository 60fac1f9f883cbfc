#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "bcsim/errors.hpp"

namespace bcsim::opt {

/// Search strategy for `maximize`.
enum class Strategy { golden_section, simplex, coordinate_descent };

/// Bounded derivative-free optimization request. All objectives are smooth,
/// cheap, and low-dimensional here, so the defaults favor robustness.
struct OptimizerSpec {
    std::vector<std::pair<double, double>> bounds; ///< [lo, hi] per parameter
    double tolerance = 1e-8;                       ///< value-space tolerance
    long max_evals = 100000;                       ///< hard evaluation budget
    Strategy strategy = Strategy::coordinate_descent;
    /// Additional deterministic starting points (appended to the built-in
    /// multi-start table for k ≥ 3 parameters).
    std::vector<std::vector<double>> extra_starts;

    void validate() const;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Maximize a bounded objective. For k ≤ 2 parameters the result is
/// self-audited against a 50-point-per-axis grid scan (the better of the
/// strategy result and a descent polish from the best grid point is
/// returned). For k ≥ 3 a deterministic 8-point multi-start is used, with
/// value ties (within max(tolerance, 1e−11)) broken toward the smallest
/// parameter norm. Throws ConvergenceError when max_evals is exhausted.
std::pair<std::vector<double>, double> maximize(const Objective& objective,
                                                const OptimizerSpec& spec);

} // namespace bcsim::opt
