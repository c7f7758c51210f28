#include "safeccc/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "safeccc/errors.hpp"

namespace safeccc {

namespace {

struct Bracket {
    std::size_t index;
    double fraction;
};

Bracket bracket(const TrafficDataset& ds, double t) {
    const double last = static_cast<double>(ds.samples() - 1);
    const double u = std::clamp((t - ds.t0) / ds.dt, 0.0, last);
    const auto index = std::min(static_cast<std::size_t>(u), ds.samples() - 2);
    return {index, u - static_cast<double>(index)};
}

double lerp_series(const std::vector<double>& series, Bracket b) {
    return series[b.index] + b.fraction * (series[b.index + 1] - series[b.index]);
}

double trapezoid(const std::vector<double>& time, const std::vector<double>& values) {
    double sum = 0.0;
    for (std::size_t k = 1; k < time.size(); ++k) {
        sum += 0.5 * (values[k] + values[k - 1]) * (time[k] - time[k - 1]);
    }
    return sum;
}

} // namespace

std::string to_string(Integrator integrator) {
    return integrator == Integrator::kEuler ? "euler" : "rk4";
}

std::string to_string(AccelEstimator estimator) {
    return estimator == AccelEstimator::kCentralDifference ? "finite_diff_central" : "provided";
}

Integrator parse_integrator(const std::string& text) {
    if (text == "euler") {
        return Integrator::kEuler;
    }
    if (text == "rk4") {
        return Integrator::kRk4;
    }
    throw ContractError("unknown integrator '" + text + "' (expected euler|rk4)");
}

AccelEstimator parse_accel_estimator(const std::string& text) {
    if (text == "finite_diff_central") {
        return AccelEstimator::kCentralDifference;
    }
    if (text == "provided") {
        return AccelEstimator::kProvided;
    }
    throw ContractError("unknown accel estimator '" + text +
                        "' (expected finite_diff_central|provided)");
}

void SimConfig::validate() const {
    if (!(dt > 0.0)) {
        throw ContractError("sim: dt must be positive");
    }
    if (!(mismatch >= 0.0)) {
        throw ContractError("sim: mismatch must be non-negative");
    }
    if (smoothing_window == 0) {
        throw ContractError("sim: smoothing window must be at least 1");
    }
    if (!equilibrium_start && !(initial_speed >= 0.0)) {
        throw ContractError("sim: explicit initial speed must be non-negative");
    }
}

LeadSample interpolate_lead(const TrafficDataset& ds, double t) {
    const double slack = 1e-9 * ds.dt;
    if (!(t >= ds.t0 - slack) || !(t <= ds.tf() + slack)) {
        throw ContractError("interpolate_lead: t = " + std::to_string(t) +
                            " is outside the dataset window");
    }
    const Bracket b = bracket(ds, t);
    LeadSample out;
    out.speeds.reserve(ds.vehicles());
    for (const auto& series : ds.speeds) {
        out.speeds.push_back(lerp_series(series, b));
    }
    if (ds.has_positions()) {
        out.position = lerp_series(ds.positions.front(), b);
    }
    return out;
}

std::vector<double> estimate_lead_accel(const TrafficDataset& ds, std::size_t window) {
    const std::size_t n = ds.samples();
    if (ds.vehicles() == 0 || n < 3) {
        throw ContractError("estimate_lead_accel: at least three samples are required");
    }
    if (window == 0) {
        throw ContractError("estimate_lead_accel: window must be at least 1");
    }
    const auto& v = ds.speeds.front();
    std::vector<double> raw(n);
    raw.front() = (v[1] - v[0]) / ds.dt;
    raw.back() = (v[n - 1] - v[n - 2]) / ds.dt;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        raw[k] = (v[k + 1] - v[k - 1]) / (2.0 * ds.dt);
    }
    if (window == 1) {
        return raw;
    }

    const std::size_t before = (window - 1) / 2;
    const std::size_t after = window - 1 - before;
    std::vector<double> smooth(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t lo = k >= before ? k - before : 0;
        const std::size_t hi = std::min(n - 1, k + after);
        double sum = 0.0;
        for (std::size_t q = lo; q <= hi; ++q) {
            sum += raw[q];
        }
        smooth[k] = sum / static_cast<double>(hi - lo + 1);
    }
    return smooth;
}

ClosedLoop::ClosedLoop(const TrafficDataset& ds, ControllerGains gains, SafetyParams safety,
                       VehicleParams vehicle, SimConfig config)
    : ds_(&ds),
      gains_(std::move(gains)),
      safety_(safety),
      vehicle_(vehicle),
      config_(config) {
    ds.validate();
    config_.validate();
    safety_.validate();
    if (gains_.vehicles() == 0 || gains_.vehicles() > ds.vehicles()) {
        throw ContractError("simulation: gains use " + std::to_string(gains_.vehicles()) +
                            " vehicles but the dataset has " + std::to_string(ds.vehicles()));
    }
    if (config_.dt > ds.dt * (1.0 + 1e-9)) {
        throw ContractError("simulation: dt_sim must not exceed the dataset sample interval");
    }
    if (config_.accel_estimator == AccelEstimator::kCentralDifference) {
        accel_estimate_ = estimate_lead_accel(ds, config_.smoothing_window);
    }
}

double ClosedLoop::lead_speed_at(double t, std::size_t vehicle) const {
    return lerp_series(ds_->speeds[vehicle], bracket(*ds_, t));
}

double ClosedLoop::lead_accel_at(double t) const {
    const Bracket b = bracket(*ds_, t);
    if (config_.accel_estimator == AccelEstimator::kProvided) {
        const auto& v = ds_->speeds.front();
        return (v[b.index + 1] - v[b.index]) / ds_->dt;
    }
    return lerp_series(accel_estimate_, b);
}

SimState ClosedLoop::initial_state() const {
    if (!config_.equilibrium_start) {
        return {config_.initial_headway, config_.initial_speed};
    }
    const double v0 = ds_->speeds.front().front();
    return {gains_.equilibrium_headway(std::min(v0, gains_.v_max)), v0};
}

StepRecord ClosedLoop::evaluate(double t, const SimState& state) const {
    const std::size_t n = gains_.vehicles();
    const Bracket b = bracket(*ds_, t);
    double leads[16];
    std::vector<double> spill;
    double* lead = leads;
    if (n > 16) {
        spill.resize(n);
        lead = spill.data();
    }
    for (std::size_t i = 0; i < n; ++i) {
        lead[i] = lerp_series(ds_->speeds[i], b);
    }

    StepRecord r;
    r.time = t;
    r.headway = state.headway;
    r.speed = state.speed;
    r.lead_accel = std::max(lead_accel_at(t), -safety_.lead_decel);
    r.a_nominal = ccc_acceleration(state.headway, state.speed, std::span<const double>(lead, n),
                                   gains_);
    r.barrier = barrier(state.headway, state.speed, lead[0], safety_);
    r.a_safe = r.a_nominal;
    if (config_.filter_enabled) {
        const double bound =
            cbf_acceleration(state.headway, state.speed, lead[0], r.lead_accel, safety_);
        if (bound < r.a_nominal) {
            r.a_safe = bound;
            r.filter_active = true;
        }
    }
    r.command = lower_level_command(r.a_safe, state.speed, vehicle_, config_.mismatch);
    const double delivered = saturate(r.command, state.speed, vehicle_);
    r.saturation_active = delivered != r.command;
    r.cbf_truncated = r.filter_active && delivered > r.command;
    r.resistance = resistance(state.speed, vehicle_);
    r.accel = delivered - r.resistance;
    return r;
}

ClosedLoop::Advance ClosedLoop::advance(double t, double h, const SimState& state,
                                        double command) const {
    auto rate = [&](double time, double headway, double speed) {
        // Stage speeds can dip below zero while the vehicle comes to rest.
        return plant_derivative(headway, std::max(speed, 0.0), lead_speed_at(time, 0), command,
                                vehicle_);
    };

    SimState next;
    if (config_.integrator == Integrator::kEuler) {
        const PlantRate k1 = rate(t, state.headway, state.speed);
        next = {state.headway + h * k1.headway_rate, state.speed + h * k1.accel};
    } else {
        const PlantRate k1 = rate(t, state.headway, state.speed);
        const PlantRate k2 = rate(t + 0.5 * h, state.headway + 0.5 * h * k1.headway_rate,
                                  state.speed + 0.5 * h * k1.accel);
        const PlantRate k3 = rate(t + 0.5 * h, state.headway + 0.5 * h * k2.headway_rate,
                                  state.speed + 0.5 * h * k2.accel);
        const PlantRate k4 =
            rate(t + h, state.headway + h * k3.headway_rate, state.speed + h * k3.accel);
        next.headway = state.headway + h / 6.0 *
                                           (k1.headway_rate + 2.0 * k2.headway_rate +
                                            2.0 * k3.headway_rate + k4.headway_rate);
        next.speed =
            state.speed + h / 6.0 * (k1.accel + 2.0 * k2.accel + 2.0 * k3.accel + k4.accel);
    }

    Advance out{next, false};
    if (out.next.speed < 0.0) {
        out.next.speed = 0.0;
        out.speed_clamped = true;
    }
    return out;
}

ClosedLoop::Step ClosedLoop::step(double t, const SimState& state) const {
    Step s;
    s.record = evaluate(t, state);
    const Advance a = advance(t, config_.dt, state, s.record.command);
    s.next = a.next;
    s.speed_clamped = a.speed_clamped;
    return s;
}

ScenarioResult run_scenario(const TrafficDataset& ds, const ControllerGains& gains,
                            const SafetyParams& safety, const VehicleParams& vehicle,
                            const SimConfig& config) {
    const ClosedLoop loop(ds, gains, safety, vehicle, config);

    const double span = ds.tf() - ds.t0;
    auto steps = static_cast<std::size_t>(std::llround(span / config.dt));
    if (static_cast<double>(steps) * config.dt < span * (1.0 - 1e-12)) {
        ++steps; // short final step lands exactly on tf
    }
    const std::size_t samples = steps + 1;

    ScenarioResult result;
    SimTrace& tr = result.trace;
    for (auto* column : {&tr.time, &tr.headway, &tr.speed, &tr.lead_accel, &tr.a_nominal,
                         &tr.a_safe, &tr.command, &tr.accel, &tr.resistance, &tr.barrier}) {
        column->reserve(samples);
    }
    tr.lead_speeds.assign(ds.vehicles(), {});
    for (auto& column : tr.lead_speeds) {
        column.reserve(samples);
    }

    SimState state = loop.initial_state();
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = k == steps ? ds.tf() : ds.t0 + static_cast<double>(k) * config.dt;
        const StepRecord r = loop.evaluate(t, state);

        tr.time.push_back(r.time);
        tr.headway.push_back(r.headway);
        tr.speed.push_back(r.speed);
        const Bracket b = bracket(ds, t);
        for (std::size_t i = 0; i < ds.vehicles(); ++i) {
            tr.lead_speeds[i].push_back(lerp_series(ds.speeds[i], b));
        }
        tr.lead_accel.push_back(r.lead_accel);
        tr.a_nominal.push_back(r.a_nominal);
        tr.a_safe.push_back(r.a_safe);
        tr.command.push_back(r.command);
        tr.accel.push_back(r.accel);
        tr.resistance.push_back(r.resistance);
        tr.barrier.push_back(r.barrier);
        tr.filter_active.push_back(r.filter_active);
        tr.saturation_active.push_back(r.saturation_active);
        tr.cbf_truncated.push_back(r.cbf_truncated);

        bool clamped = false;
        if (k < steps) {
            const double t_next =
                k + 1 == steps ? ds.tf() : ds.t0 + static_cast<double>(k + 1) * config.dt;
            const auto next = loop.advance(t, t_next - t, state, r.command);
            state = next.next;
            clamped = next.speed_clamped;
        }
        tr.speed_clamped.push_back(clamped);
    }

    result.metrics = compute_metrics(tr);
    return result;
}

double energy_w(const SimTrace& trace) {
    std::vector<double> integrand(trace.size());
    for (std::size_t k = 0; k < trace.size(); ++k) {
        integrand[k] = trace.speed[k] * std::max(trace.accel[k] + trace.resistance[k], 0.0);
    }
    return trapezoid(trace.time, integrand);
}

double energy_brake(const SimTrace& trace) {
    std::vector<double> integrand(trace.size());
    for (std::size_t k = 0; k < trace.size(); ++k) {
        integrand[k] = trace.speed[k] * std::max(-trace.accel[k] - trace.resistance[k], 0.0);
    }
    return trapezoid(trace.time, integrand);
}

double h_violation_pct(const SimTrace& trace) {
    if (trace.size() == 0) {
        return 0.0;
    }
    const auto negative = std::count_if(trace.barrier.begin(), trace.barrier.end(),
                                        [](double h) { return h < 0.0; });
    return 100.0 * static_cast<double>(negative) / static_cast<double>(trace.size());
}

double h_margin(const SimTrace& trace) {
    std::vector<double> integrand(trace.size());
    for (std::size_t k = 0; k < trace.size(); ++k) {
        integrand[k] = std::max(-trace.barrier[k], 0.0);
    }
    return trapezoid(trace.time, integrand);
}

Metrics compute_metrics(const SimTrace& trace) {
    if (trace.size() == 0) {
        throw ContractError("metrics: empty trace");
    }
    Metrics m;
    m.w = energy_w(trace);
    m.w_brake = energy_brake(trace);
    m.h_neg_pct = h_violation_pct(trace);
    m.h_margin = h_margin(trace);
    m.crash = std::any_of(trace.headway.begin(), trace.headway.end(),
                          [](double d) { return d <= 0.0; });
    m.min_barrier = *std::min_element(trace.barrier.begin(), trace.barrier.end());
    const auto active = std::count(trace.filter_active.begin(), trace.filter_active.end(), 1);
    m.filter_active_pct = 100.0 * static_cast<double>(active) / static_cast<double>(trace.size());
    m.cbf_truncated_steps = static_cast<std::size_t>(
        std::count(trace.cbf_truncated.begin(), trace.cbf_truncated.end(), 1));
    m.speed_clamped_steps = static_cast<std::size_t>(
        std::count(trace.speed_clamped.begin(), trace.speed_clamped.end(), 1));
    return m;
}

TrafficDataset nearest_vehicles(const TrafficDataset& ds, std::size_t n) {
    if (n == 0 || n > ds.vehicles()) {
        throw ContractError("dataset has " + std::to_string(ds.vehicles()) +
                            " vehicles, cannot select " + std::to_string(n));
    }
    TrafficDataset out;
    out.t0 = ds.t0;
    out.dt = ds.dt;
    out.speeds.assign(ds.speeds.begin(), ds.speeds.begin() + static_cast<std::ptrdiff_t>(n));
    if (ds.has_positions()) {
        out.positions.assign(ds.positions.begin(),
                             ds.positions.begin() + static_cast<std::ptrdiff_t>(n));
    }
    return out;
}

} // namespace safeccc
