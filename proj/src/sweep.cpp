#include "safeccc/sweep.hpp"

#include <algorithm>
#include <limits>

#include "safeccc/errors.hpp"
#include "safeccc/parallel.hpp"

namespace safeccc {

std::string to_string(SweepObjective objective) {
    return objective == SweepObjective::kSimulatedEnergy ? "w" : "J";
}

SweepObjective parse_sweep_objective(const std::string& text) {
    if (text == "w" || text == "simulated_w") {
        return SweepObjective::kSimulatedEnergy;
    }
    if (text == "J" || text == "spectral_J") {
        return SweepObjective::kSpectralCost;
    }
    throw ContractError("unknown sweep objective '" + text + "' (expected w|J)");
}

SweepResult grid_sweep(const TrafficDataset& ds, const FixedGains& fixed, const BetaBox& box,
                       std::size_t vehicles, const SafetyParams& safety,
                       const VehicleParams& vehicle, const SimConfig& config,
                       SweepObjective objective, unsigned workers) {
    const TrafficDataset subset = nearest_vehicles(ds, vehicles);
    const SpectralDecomposition spec = decompose(subset);
    const BetaLattice lattice(vehicles, box);

    struct Slot {
        bool feasible = false;
        SweepRow row;
    };
    std::vector<Slot> slots(lattice.size());
    parallel_for(lattice.size(), workers, [&](std::size_t index) {
        Slot& slot = slots[index];
        slot.row.lattice_index = index;
        slot.row.betas = lattice.point(index);
        const ControllerGains gains = fixed.with_betas(slot.row.betas);
        slot.feasible = is_plant_stable(gains, kStabilityMargin);
        if (!slot.feasible) {
            return;
        }
        slot.row.spectral_cost = objective_j(spec, gains);
        if (objective == SweepObjective::kSimulatedEnergy) {
            slot.row.metrics = run_scenario(ds, gains, safety, vehicle, config).metrics;
            slot.row.score = slot.row.metrics->w;
        } else {
            slot.row.score = slot.row.spectral_cost;
        }
    });

    SweepResult result;
    result.objective = objective;
    result.lattice_size = lattice.size();
    for (auto& slot : slots) {
        if (slot.feasible) {
            result.rows.push_back(std::move(slot.row));
        }
    }
    if (result.rows.empty()) {
        throw ContractError("sweep: no lattice point lies in the plant-stable set");
    }
    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [](const SweepRow& a, const SweepRow& b) { return a.score < b.score; });
    result.best = fixed.with_betas(result.rows.front().betas);
    return result;
}

OptimizationReport train_gains(const TrafficDataset& ds, std::size_t vehicles,
                               const FixedGains& fixed, const OptimizerSettings& settings,
                               unsigned workers) {
    const TrafficDataset subset = nearest_vehicles(ds, vehicles);
    SpectralDecomposition spec =
        decompose(subset, settings.components == 0 ? std::nullopt
                                                   : std::optional<std::size_t>(settings.components));
    if (settings.energy_fraction > 0.0) {
        spec = truncate_by_energy(spec, settings.energy_fraction);
    }
    return optimize_gains(spec, fixed, settings.box, settings.method, workers);
}

double reduction_percent(double baseline, double candidate) {
    return baseline == 0.0 ? 0.0 : 100.0 * (baseline - candidate) / baseline;
}

std::vector<ComparisonRow> evaluate_designs(const ControllerGains& acc, const ControllerGains& ccc,
                                            const std::vector<NamedDataset>& tests,
                                            const SafetyParams& safety,
                                            const VehicleParams& vehicle,
                                            const SimConfig& config, bool with_optimal,
                                            const BetaBox& box, unsigned workers) {
    std::vector<ComparisonRow> rows;
    rows.reserve(tests.size());
    for (const auto& test : tests) {
        ComparisonRow row;
        row.dataset = test.name;
        row.acc = run_scenario(test.data, acc, safety, vehicle, config).metrics;
        row.ccc = run_scenario(test.data, ccc, safety, vehicle, config).metrics;
        row.reduction_pct = reduction_percent(row.acc.w, row.ccc.w);
        if (with_optimal) {
            row.acc_optimal = grid_sweep(test.data, FixedGains::from(acc), box, acc.vehicles(),
                                         safety, vehicle, config,
                                         SweepObjective::kSimulatedEnergy, workers);
            row.ccc_optimal = grid_sweep(test.data, FixedGains::from(ccc), box, ccc.vehicles(),
                                         safety, vehicle, config,
                                         SweepObjective::kSimulatedEnergy, workers);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Comparison compare_designs(const TrafficDataset& train, const std::vector<NamedDataset>& tests,
                           std::size_t vehicles, const FixedGains& fixed,
                           const OptimizerSettings& settings, const SafetyParams& safety,
                           const VehicleParams& vehicle, const SimConfig& config,
                           bool with_optimal, unsigned workers) {
    for (const auto& test : tests) {
        if (test.data.vehicles() < vehicles) {
            throw ContractError("compare: test dataset '" + test.name + "' has fewer than " +
                                std::to_string(vehicles) + " vehicles");
        }
    }
    const OptimizationReport acc = train_gains(train, 1, fixed, settings, workers);
    const OptimizationReport ccc = train_gains(train, vehicles, fixed, settings, workers);

    Comparison out;
    out.acc = acc.gains;
    out.ccc = ccc.gains;
    out.acc_cost = acc.cost;
    out.ccc_cost = ccc.cost;
    out.rows = evaluate_designs(out.acc, out.ccc, tests, safety, vehicle, config, with_optimal,
                                settings.box, workers);
    return out;
}

} // namespace safeccc
