#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "safeccc/controller.hpp"
#include "safeccc/spectral.hpp"

namespace safeccc {

/// Margin applied to each strict inequality of the plant-stable set.
inline constexpr double kStabilityMargin = 1e-6;

/// Gains held fixed while the betas are searched.
struct FixedGains {
    double alpha = 0.4;
    double kappa = 0.6;
    double v_max = 30.0;
    double d_st = 5.0;

    ControllerGains with_betas(std::vector<double> betas) const {
        return {alpha, kappa, std::move(betas), v_max, d_st};
    }
    static FixedGains from(const ControllerGains& gains) {
        return {gains.alpha, gains.kappa, gains.v_max, gains.d_st};
    }
};

/// The same closed interval for every beta, sampled at `step`.
struct BetaBox {
    double lower = 0.0;
    double upper = 2.0;
    double step = 0.1;
};

/**
 * Regular lattice over `dims` betas. Points are numbered so that increasing
 * index is lexicographic order of the beta vector (beta_1 most significant).
 * Coordinates are computed as lower + k * step, never by accumulation.
 */
class BetaLattice {
public:
    BetaLattice(std::size_t dims, BetaBox box);

    std::size_t dims() const noexcept { return dims_; }
    std::size_t per_axis() const noexcept { return per_axis_; }
    std::size_t size() const noexcept { return size_; }
    std::vector<double> point(std::size_t index) const;
    const BetaBox& box() const noexcept { return box_; }

private:
    std::size_t dims_;
    BetaBox box_;
    std::size_t per_axis_;
    std::size_t size_;
};

enum class OptimizerMethod { kGrid, kNelderMead };

std::string to_string(OptimizerMethod method);
OptimizerMethod parse_optimizer_method(const std::string& text);

struct GridPoint {
    std::vector<double> betas;
    double cost = 0.0;   ///< J, or +inf when infeasible
    bool feasible = false;
};

struct OptimizationReport {
    OptimizerMethod method = OptimizerMethod::kGrid;
    ControllerGains gains;        ///< final answer of the chosen method
    double cost = 0.0;
    ControllerGains grid_gains;   ///< lattice argmin (always computed)
    double grid_cost = 0.0;
    std::size_t lattice_size = 0;
    std::size_t feasible_count = 0;
    std::size_t refine_iterations = 0;
    std::vector<GridPoint> grid;  ///< every lattice point in index order
};

/// Evaluate J on every lattice point, in parallel, merging results by index.
std::vector<GridPoint> evaluate_lattice(const SpectralDecomposition& spec, const FixedGains& fixed,
                                        const BetaLattice& lattice, unsigned workers = 0);

/**
 * Minimize J over the plant-stable part of the beta box. The grid method
 * returns the lexicographically smallest minimizer; Nelder-Mead starts from
 * that point and stays inside the box and the stable set.
 */
OptimizationReport optimize_gains(const SpectralDecomposition& spec, const FixedGains& fixed,
                                  const BetaBox& box, OptimizerMethod method,
                                  unsigned workers = 0);

} // namespace safeccc
