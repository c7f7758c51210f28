#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace safeccc {

struct NelderMeadOptions {
    double initial_step = 0.1;
    double f_tolerance = 1e-12; ///< stop when the simplex value spread is below this
    double x_tolerance = 1e-9;  ///< ... and the simplex diameter is below this
    std::size_t max_iterations = 5000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Unconstrained downhill simplex with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2). Constraints are
/// expressed through the objective (projection or +inf).
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options = {});

} // namespace safeccc
