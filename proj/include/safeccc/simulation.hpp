#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "safeccc/controller.hpp"
#include "safeccc/dataset.hpp"
#include "safeccc/safety.hpp"
#include "safeccc/vehicle.hpp"

namespace safeccc {

enum class Integrator { kEuler, kRk4 };

/// kCentralDifference differentiates the sampled v1 (with optional moving
/// average); kProvided reads the slope of the piecewise-linear lead speed
/// that the simulator replays.
enum class AccelEstimator { kCentralDifference, kProvided };

std::string to_string(Integrator integrator);
std::string to_string(AccelEstimator estimator);
Integrator parse_integrator(const std::string& text);
AccelEstimator parse_accel_estimator(const std::string& text);

struct SimConfig {
    double dt = 0.01;
    Integrator integrator = Integrator::kRk4;
    bool equilibrium_start = true;
    double initial_headway = 0.0; ///< used when equilibrium_start is false
    double initial_speed = 0.0;
    bool filter_enabled = true;
    double mismatch = 1.0;
    AccelEstimator accel_estimator = AccelEstimator::kCentralDifference;
    std::size_t smoothing_window = 3; ///< 1 disables smoothing

    void validate() const;
};

struct LeadSample {
    std::vector<double> speeds;
    std::optional<double> position; ///< s_1 when the dataset carries positions
};

/// Piecewise-linear interpolation of every series at t in [t0, tf].
LeadSample interpolate_lead(const TrafficDataset& ds, double t);

/// Central differences of v_1 (one-sided at both ends), then a centered
/// moving average over `window` samples, truncated at the ends.
std::vector<double> estimate_lead_accel(const TrafficDataset& ds, std::size_t window = 1);

struct SimState {
    double headway = 0.0;
    double speed = 0.0;
};

struct StepRecord {
    double time = 0.0;
    double headway = 0.0;
    double speed = 0.0;
    double lead_accel = 0.0;  ///< a_1 after clamping to the assumed bound
    double a_nominal = 0.0;
    double a_safe = 0.0;
    double command = 0.0;     ///< u before saturation
    double accel = 0.0;       ///< plant dv/dt = -f(v) + sat(u, v)
    double resistance = 0.0;  ///< f(v)
    double barrier = 0.0;     ///< h
    bool filter_active = false;
    bool saturation_active = false;
    bool cbf_truncated = false; ///< filter active and saturation raised the command
};

/// Column-wise closed-loop history; every vector has one entry per sample.
struct SimTrace {
    std::vector<double> time, headway, speed;
    std::vector<std::vector<double>> lead_speeds; ///< [vehicle][sample]
    std::vector<double> lead_accel, a_nominal, a_safe, command, accel, resistance, barrier;
    std::vector<std::uint8_t> filter_active, saturation_active, cbf_truncated, speed_clamped;

    std::size_t size() const noexcept { return time.size(); }
};

struct Metrics {
    double w = 0.0;          ///< [J/kg]
    double w_brake = 0.0;    ///< [J/kg]
    double h_neg_pct = 0.0;  ///< [%]
    double h_margin = 0.0;   ///< integral of max(B - D, 0) [m s]
    bool crash = false;
    double min_barrier = 0.0;
    double filter_active_pct = 0.0;
    std::size_t cbf_truncated_steps = 0;
    std::size_t speed_clamped_steps = 0;
};

/**
 * The ego vehicle closed around the replayed lead data. The controller
 * output is computed at the start of each step and held while the plant is
 * integrated; lead speeds are interpolated inside the integrator stages.
 */
class ClosedLoop {
public:
    ClosedLoop(const TrafficDataset& ds, ControllerGains gains, SafetyParams safety,
               VehicleParams vehicle, SimConfig config);

    SimState initial_state() const;

    /// Controller, filter and plant rate at (t, state).
    StepRecord evaluate(double t, const SimState& state) const;

    struct Advance {
        SimState next;
        bool speed_clamped = false;
    };
    /// Integrate the plant over [t, t + h] with `command` held.
    Advance advance(double t, double h, const SimState& state, double command) const;

    struct Step {
        StepRecord record;
        SimState next;
        bool speed_clamped = false;
    };
    Step step(double t, const SimState& state) const;

    const TrafficDataset& dataset() const noexcept { return *ds_; }
    const ControllerGains& gains() const noexcept { return gains_; }
    const SimConfig& config() const noexcept { return config_; }

private:
    double lead_speed_at(double t, std::size_t vehicle) const;
    double lead_accel_at(double t) const;

    const TrafficDataset* ds_;
    ControllerGains gains_;
    SafetyParams safety_;
    VehicleParams vehicle_;
    SimConfig config_;
    std::vector<double> accel_estimate_;
};

struct ScenarioResult {
    SimTrace trace;
    Metrics metrics;
};

/// Integrate over the whole dataset window and compute the metrics.
ScenarioResult run_scenario(const TrafficDataset& ds, const ControllerGains& gains,
                            const SafetyParams& safety, const VehicleParams& vehicle,
                            const SimConfig& config);

double energy_w(const SimTrace& trace);
double energy_brake(const SimTrace& trace);
double h_violation_pct(const SimTrace& trace);
double h_margin(const SimTrace& trace);
Metrics compute_metrics(const SimTrace& trace);

/// The first n lead vehicles of a dataset.
TrafficDataset nearest_vehicles(const TrafficDataset& ds, std::size_t n);

} // namespace safeccc
