#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "safeccc/optimizer.hpp"
#include "safeccc/simulation.hpp"

namespace safeccc {

enum class SweepObjective { kSimulatedEnergy, kSpectralCost };

std::string to_string(SweepObjective objective);
SweepObjective parse_sweep_objective(const std::string& text);

struct SweepRow {
    std::size_t lattice_index = 0;
    std::vector<double> betas;
    double score = 0.0;         ///< w [J/kg] or J, depending on the objective
    double spectral_cost = 0.0; ///< J, always filled
    std::optional<Metrics> metrics; ///< present for the simulated objective
};

struct SweepResult {
    SweepObjective objective = SweepObjective::kSimulatedEnergy;
    std::size_t lattice_size = 0;
    std::vector<SweepRow> rows; ///< feasible points, best first; ties by lattice index
    ControllerGains best;
};

/**
 * Brute-force evaluation of every plant-stable lattice point with `vehicles`
 * betas. The dataset supplies the first `vehicles` lead speeds. Scenarios run
 * on a worker pool; results are merged by lattice index so the output does
 * not depend on scheduling.
 */
SweepResult grid_sweep(const TrafficDataset& ds, const FixedGains& fixed, const BetaBox& box,
                       std::size_t vehicles, const SafetyParams& safety,
                       const VehicleParams& vehicle, const SimConfig& config,
                       SweepObjective objective, unsigned workers = 0);

/// Spectral settings shared by the optimize and compare workflows.
struct OptimizerSettings {
    BetaBox box;
    OptimizerMethod method = OptimizerMethod::kGrid;
    std::size_t components = 0;  ///< 0 = Nyquist limit
    double energy_fraction = 0.0; ///< > 0 enables power-based truncation
};

/// Decompose (nearest `vehicles` series) and optimize the betas.
OptimizationReport train_gains(const TrafficDataset& ds, std::size_t vehicles,
                               const FixedGains& fixed, const OptimizerSettings& settings,
                               unsigned workers = 0);

struct NamedDataset {
    std::string name;
    TrafficDataset data;
};

struct ComparisonRow {
    std::string dataset;
    Metrics acc;
    Metrics ccc;
    double reduction_pct = 0.0; ///< 100 (w_acc - w_ccc) / w_acc
    std::optional<SweepResult> acc_optimal; ///< brute-force w-optimal baselines
    std::optional<SweepResult> ccc_optimal;
};

struct Comparison {
    ControllerGains acc;
    ControllerGains ccc;
    double acc_cost = 0.0; ///< J on the training data
    double ccc_cost = 0.0;
    std::vector<ComparisonRow> rows;
};

/// Simulate fixed ACC and CCC designs on every test dataset.
std::vector<ComparisonRow> evaluate_designs(const ControllerGains& acc, const ControllerGains& ccc,
                                            const std::vector<NamedDataset>& tests,
                                            const SafetyParams& safety,
                                            const VehicleParams& vehicle,
                                            const SimConfig& config, bool with_optimal,
                                            const BetaBox& box, unsigned workers = 0);

/// Train ACC (one beta) and CCC (`vehicles` betas) on `train`, then evaluate
/// both on each of `tests`.
Comparison compare_designs(const TrafficDataset& train, const std::vector<NamedDataset>& tests,
                           std::size_t vehicles, const FixedGains& fixed,
                           const OptimizerSettings& settings, const SafetyParams& safety,
                           const VehicleParams& vehicle, const SimConfig& config,
                           bool with_optimal, unsigned workers = 0);

double reduction_percent(double baseline, double candidate);

} // namespace safeccc
