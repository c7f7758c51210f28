#include "safeccc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "safeccc/errors.hpp"
#include "safeccc/nelder_mead.hpp"
#include "safeccc/parallel.hpp"

namespace safeccc {

BetaLattice::BetaLattice(std::size_t dims, BetaBox box) : dims_(dims), box_(box) {
    if (dims == 0) {
        throw ContractError("lattice: at least one beta is required");
    }
    if (!(box.step > 0.0) || !(box.upper >= box.lower)) {
        throw ContractError("lattice: require step > 0 and upper >= lower");
    }
    // Tolerance keeps the upper edge when (upper - lower) / step is an
    // integer up to rounding (e.g. 2.0 / 0.1).
    per_axis_ = static_cast<std::size_t>(std::floor((box.upper - box.lower) / box.step + 1e-9)) + 1;
    size_ = 1;
    for (std::size_t d = 0; d < dims; ++d) {
        size_ *= per_axis_;
    }
}

std::vector<double> BetaLattice::point(std::size_t index) const {
    std::vector<double> betas(dims_);
    for (std::size_t d = dims_; d-- > 0;) {
        betas[d] = box_.lower + static_cast<double>(index % per_axis_) * box_.step;
        index /= per_axis_;
    }
    return betas;
}

std::string to_string(OptimizerMethod method) {
    return method == OptimizerMethod::kGrid ? "grid" : "nelder_mead";
}

OptimizerMethod parse_optimizer_method(const std::string& text) {
    if (text == "grid") {
        return OptimizerMethod::kGrid;
    }
    if (text == "nelder_mead" || text == "nelder-mead") {
        return OptimizerMethod::kNelderMead;
    }
    throw ContractError("unknown optimizer method '" + text + "' (expected grid|nelder_mead)");
}

std::vector<GridPoint> evaluate_lattice(const SpectralDecomposition& spec, const FixedGains& fixed,
                                        const BetaLattice& lattice, unsigned workers) {
    std::vector<GridPoint> grid(lattice.size());
    parallel_for(lattice.size(), workers, [&](std::size_t index) {
        GridPoint& point = grid[index];
        point.betas = lattice.point(index);
        const ControllerGains gains = fixed.with_betas(point.betas);
        point.feasible = is_plant_stable(gains, kStabilityMargin);
        point.cost = point.feasible ? objective_j(spec, gains)
                                    : std::numeric_limits<double>::infinity();
    });
    return grid;
}

OptimizationReport optimize_gains(const SpectralDecomposition& spec, const FixedGains& fixed,
                                  const BetaBox& box, OptimizerMethod method, unsigned workers) {
    if (!(fixed.alpha > kStabilityMargin) || !(fixed.kappa > kStabilityMargin)) {
        throw ContractError("optimize: fixed alpha and kappa must be positive");
    }
    const BetaLattice lattice(spec.vehicles(), box);

    OptimizationReport report;
    report.method = method;
    report.lattice_size = lattice.size();
    report.grid = evaluate_lattice(spec, fixed, lattice, workers);

    std::size_t best = report.grid.size();
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
        const GridPoint& point = report.grid[i];
        if (!point.feasible) {
            continue;
        }
        ++report.feasible_count;
        // Strict comparison in index order keeps the lexicographically
        // smallest beta vector among ties.
        if (best == report.grid.size() || point.cost < report.grid[best].cost) {
            best = i;
        }
    }
    if (report.feasible_count == 0) {
        throw ContractError("optimize: no lattice point lies in the plant-stable set");
    }

    report.grid_gains = fixed.with_betas(report.grid[best].betas);
    report.grid_cost = report.grid[best].cost;
    report.gains = report.grid_gains;
    report.cost = report.grid_cost;
    if (method == OptimizerMethod::kGrid) {
        return report;
    }

    auto project = [&](std::span<const double> x) {
        std::vector<double> betas(x.begin(), x.end());
        for (double& b : betas) {
            b = std::clamp(b, box.lower, box.upper);
        }
        return betas;
    };
    auto cost = [&](std::span<const double> x) {
        const ControllerGains gains = fixed.with_betas(project(x));
        if (!is_plant_stable(gains, kStabilityMargin)) {
            return std::numeric_limits<double>::infinity();
        }
        return objective_j(spec, gains);
    };

    NelderMeadOptions options;
    options.initial_step = box.step;
    const double scale = std::max(report.grid_cost, std::numeric_limits<double>::min());
    options.f_tolerance = 1e-12 * scale;
    const NelderMeadResult refined = nelder_mead(cost, report.grid[best].betas, options);
    report.refine_iterations = refined.iterations;
    if (refined.value < report.grid_cost) {
        report.gains = fixed.with_betas(project(refined.x));
        report.cost = objective_j(spec, report.gains);
    }
    return report;
}

} // namespace safeccc
