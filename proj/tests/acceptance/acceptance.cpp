// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "safeccc/optimizer.hpp"
#include "safeccc/safety.hpp"
#include "safeccc/simulation.hpp"
#include "safeccc/spectral.hpp"
#include "safeccc/sweep.hpp"
#include "safeccc/synthetic.hpp"

using namespace safeccc;

namespace {

constexpr double kPi = std::numbers::pi;

// Criterion 1
constexpr int kContinuitySamples = 10000;
constexpr double kContinuityTol = 1e-9;
constexpr int kGradientSamples = 1000;
constexpr double kGradientRelTol = 1e-6;
constexpr double kCriterion1Seconds = 5.0;
// Criterion 2
constexpr int kInvarianceScenarios = 100;
constexpr double kCoarseDt = 0.01;
constexpr double kFineDt = 0.001;
constexpr int kPhases = 5;
constexpr double kCriterion2Seconds = 60.0;
// Criterion 3
constexpr double kToneAmplitude = 0.1;
constexpr double kLinearRelTol = 0.02;
constexpr double kCriterion3Seconds = 10.0;
// Criterion 4
constexpr double kReconstructionRelTol = 1e-9;
// Criterion 6
constexpr double kMinSpearman = 0.8;
// Criterion 8
constexpr double kDriftSpeedTol = 1e-6;
constexpr double kDriftHeadwayTol = 1e-6;
// Criterion 9
constexpr double kCruiseRelTol = 1e-3;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Every simulated trace passes through here for the positive/negative part
// identity of criterion 9.
struct TraceAudit {
    std::size_t traces = 0;
    std::size_t samples = 0;
    std::size_t violations = 0;
    std::size_t energy_mismatches = 0;

    void check(const SimTrace& tr, const Metrics& m) {
        ++traces;
        std::vector<double> net(tr.size());
        for (std::size_t k = 0; k < tr.size(); ++k) {
            const double x = tr.accel[k] + tr.resistance[k];
            const double pos = std::max(x, 0.0);
            const double neg = std::max(-x, 0.0);
            if (pos * neg != 0.0 || pos - neg != x) {
                ++violations;
            }
            net[k] = tr.speed[k] * x;
            ++samples;
        }
        // w - w_brake must equal the integral of v (vdot + f).
        double integral = 0.0;
        for (std::size_t k = 1; k < tr.size(); ++k) {
            integral += 0.5 * (net[k] + net[k - 1]) * (tr.time[k] - tr.time[k - 1]);
        }
        const double scale = std::max({1.0, m.w, m.w_brake});
        if (std::abs((m.w - m.w_brake) - integral) > 1e-9 * scale) {
            ++energy_mismatches;
        }
    }
};

TraceAudit audit;

ScenarioResult simulate(const TrafficDataset& ds, const ControllerGains& gains,
                        const SafetyParams& safety, const SimConfig& config) {
    ScenarioResult r = run_scenario(ds, gains, safety, VehicleParams{}, config);
    audit.check(r.trace, r.metrics);
    return r;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&](bool ego_weaker) {
        SafetyParams sp;
        sp.tau = 0.3 + 2.2 * unit(rng);
        const double a = 1.0 + 8.0 * unit(rng);
        const double b = 1.0 + 8.0 * unit(rng);
        sp.ego_decel = ego_weaker ? std::min(a, b) : std::max(a, b);
        sp.lead_decel = ego_weaker ? std::max(a, b) : std::min(a, b);
        if (!ego_weaker && sp.ego_decel == sp.lead_decel) {
            sp.ego_decel += 0.5;
        }
        return sp;
    };

    double worst_gap = 0.0;
    int weak_cases = 0;
    for (int i = 0; i < kContinuitySamples; ++i) {
        const bool ego_weaker = i % 2 == 0;
        const SafetyParams sp = draw(ego_weaker);
        // Speeds above a tau keep every boundary at a non-negative lead speed.
        const double v = sp.ego_decel * sp.tau + 40.0 * unit(rng);
        auto gap = [&](EnvelopeBranch lo, EnvelopeBranch hi, double v1) {
            return std::abs(envelope_on_branch(lo, v, v1, sp) - envelope_on_branch(hi, v, v1, sp));
        };
        if (ego_weaker) {
            ++weak_cases;
            worst_gap = std::max(worst_gap, gap(EnvelopeBranch::kImmediate, EnvelopeBranch::kAtStop,
                                                boundary_f1(v, sp)));
        } else {
            worst_gap = std::max(worst_gap, gap(EnvelopeBranch::kImmediate,
                                                EnvelopeBranch::kDuringBraking,
                                                boundary_f2(v, sp)));
            worst_gap = std::max(worst_gap, gap(EnvelopeBranch::kDuringBraking,
                                                EnvelopeBranch::kAtStop, boundary_f3(v, sp)));
        }
    }

    double worst_rel = 0.0;
    int interior = 0;
    const double step = 1e-3;
    const double margin = 1e-2;
    while (interior < kGradientSamples) {
        const SafetyParams sp = draw(interior % 2 == 0);
        const double v = 40.0 * unit(rng);
        const double v1 = 40.0 * unit(rng);
        if (v < margin || v1 < margin) {
            continue;
        }
        const EnvelopeBranch b = envelope_branch(v, v1, sp);
        bool near = false;
        for (double f : {boundary_f1(v, sp), boundary_f2(v, sp), boundary_f3(v, sp)}) {
            near = near || std::abs(v1 - f) < margin;
        }
        for (double d : {-step, step}) {
            near = near || envelope_branch(v + d, v1, sp) != b || envelope_branch(v, v1 + d, sp) != b;
        }
        if (near) {
            continue;
        }
        const double fd_v =
            (stopping_envelope(v + step, v1, sp) - stopping_envelope(v - step, v1, sp)) / (2 * step);
        const double fd_v1 =
            (stopping_envelope(v, v1 + step, sp) - stopping_envelope(v, v1 - step, sp)) / (2 * step);
        const EnvelopeGradient g = envelope_gradient(v, v1, sp);
        auto rel = [](double fd, double exact) {
            if (exact == 0.0) {
                return std::abs(fd) <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
            }
            return std::abs(fd - exact) / std::abs(exact);
        };
        worst_rel = std::max({worst_rel, rel(fd_v, g.d_speed), rel(fd_v1, g.d_lead_speed)});
        ++interior;
    }

    const double elapsed = seconds_since(start);
    Outcome out;
    out.pass = worst_gap <= kContinuityTol && worst_rel <= kGradientRelTol &&
               elapsed < kCriterion1Seconds;
    out.detail = fmt("max boundary gap %.2e m over %d samples (%d with ego_decel <= lead_decel), "
                     "max gradient rel err %.2e over %d points, %.2f s",
                     worst_gap, kContinuitySamples, weak_cases, worst_rel, kGradientSamples,
                     elapsed);
    return out;
}

// ---------------------------------------------------------------------------

// Minimum sampled barrier with the control grid shifted by `offset`: the
// first hold lasts `offset`, then steps of dt follow.
double min_barrier_with_phase(const ClosedLoop& loop, double dt, double offset) {
    const TrafficDataset& ds = loop.dataset();
    SimState state = loop.initial_state();
    double t = ds.t0;
    const double tf = ds.tf();
    double next = offset > 0.0 ? ds.t0 + offset : ds.t0 + dt;
    double min_h = std::numeric_limits<double>::infinity();
    for (;;) {
        const StepRecord r = loop.evaluate(t, state);
        min_h = std::min(min_h, r.barrier);
        if (t >= tf) {
            break;
        }
        double t_next = std::min(next, tf);
        if (tf - t_next < 1e-9 * dt) {
            t_next = tf;
        }
        state = loop.advance(t, t_next - t, state, r.command).next;
        t = t_next;
        next = t_next + dt;
    }
    return min_h;
}

Outcome criterion2() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const SafetyParams safety;
    const VehicleParams vehicle;

    double floor_coarse = 0.0;
    double floor_fine = 0.0;
    double min_h = std::numeric_limits<double>::infinity();
    double h_neg_pct_max = 0.0;
    double h_margin_max = 0.0;
    int active = 0;
    int lead_bound_violations = 0;
    std::size_t truncated = 0;
    bool bound_ok = true;
    double v_max = 0.0;

    for (int s = 0; s < kInvarianceScenarios; ++s) {
        StopAndGoOptions options;
        options.vehicles = 3;
        options.duration = 100.0;
        options.seed = 5000 + static_cast<std::uint64_t>(s);
        options.head_decel = 2.0 + 2.0 * unit(rng);
        const TrafficDataset ds = synthetic_stop_and_go(options);

        // Aggressive nominal gains so the filter has work to do.
        ControllerGains gains;
        gains.alpha = 0.2 + 0.8 * unit(rng);
        gains.kappa = 0.6 + 1.4 * unit(rng);
        gains.betas.assign(1 + static_cast<std::size_t>(s) % 3, 0.0);
        for (double& b : gains.betas) {
            b = unit(rng);
        }
        v_max = gains.v_max;
        safety.validate_brake_authority(vehicle, gains.v_max);

        // Start on or just inside the safe set, closing on the lead.
        const double v1 = ds.speeds[0][0];
        SimConfig config;
        config.equilibrium_start = false;
        config.initial_speed = v1 + 8.0 * unit(rng);
        config.initial_headway = stopping_envelope(config.initial_speed, v1, safety) +
                                 5.0 * unit(rng) * static_cast<double>(s % 2);
        config.accel_estimator = AccelEstimator::kProvided;

        for (int level = 0; level < 2; ++level) {
            config.dt = level == 0 ? kCoarseDt : kFineDt;
            const ClosedLoop loop(ds, gains, safety, vehicle, config);
            double worst = 0.0;
            for (int p = 0; p < kPhases; ++p) {
                const double h = min_barrier_with_phase(loop, config.dt, config.dt * p / kPhases);
                min_h = std::min(min_h, h);
                worst = std::max(worst, -h);
                bound_ok = bound_ok && h >= -config.dt * gains.v_max;
            }
            (level == 0 ? floor_coarse : floor_fine) =
                std::max(level == 0 ? floor_coarse : floor_fine, worst);
        }

        config.dt = kCoarseDt;
        const ScenarioResult r = simulate(ds, gains, safety, config);
        if (!lead_accel_within_bound(r.trace.lead_accel, safety)) {
            ++lead_bound_violations;
        }
        active += r.metrics.filter_active_pct > 0.0 ? 1 : 0;
        truncated += r.metrics.cbf_truncated_steps;
        h_neg_pct_max = std::max(h_neg_pct_max, r.metrics.h_neg_pct);
        h_margin_max = std::max(h_margin_max, r.metrics.h_margin);
    }

    // Default configuration on recorded-style data: the filtered runs must
    // show no violation at all.
    double table_h_neg = 0.0;
    double table_h_margin = 0.0;
    double unfiltered_h_margin = 0.0;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        StopAndGoOptions options;
        options.seed = seed;
        const TrafficDataset ds = synthetic_stop_and_go(options);
        for (const std::vector<double>& betas : {std::vector<double>{0.4},
                                                 std::vector<double>{0.0, 0.0, 0.5}}) {
            ControllerGains gains;
            gains.betas = betas;
            SimConfig config;
            const Metrics on = simulate(ds, gains, safety, config).metrics;
            config.filter_enabled = false;
            const Metrics off = simulate(ds, gains, safety, config).metrics;
            table_h_neg = std::max(table_h_neg, on.h_neg_pct);
            table_h_margin = std::max(table_h_margin, on.h_margin);
            unfiltered_h_margin = std::max(unfiltered_h_margin, off.h_margin);
        }
    }

    // The dominant violation comes from branch switches inside a held
    // step, so it is first order in dt. Sweeping kPhases grid offsets
    // estimates the worst case to within 1/kPhases of a step, which bounds
    // how far below 10 the refinement ratio may fall.
    const double ratio = floor_fine > 0.0 ? floor_coarse / floor_fine
                                          : std::numeric_limits<double>::infinity();
    const double required_ratio = 10.0 * (1.0 - 1.0 / kPhases);
    const bool shrinks = floor_fine == 0.0 || ratio >= required_ratio;

    const double elapsed = seconds_since(start);
    Outcome out;
    out.pass = bound_ok && shrinks && lead_bound_violations == 0 && truncated == 0 &&
               table_h_neg == 0.0 && table_h_margin == 0.0 && elapsed < kCriterion2Seconds;
    out.detail = fmt("min h %.3e m (bound -%.2f m at dt %.3g), floor %.3e -> %.3e m "
                     "(ratio %.2f, need >= %.1f), filter active in %d/%d runs, "
                     "stress runs worst h<0 %.2f %% / h_margin %.4f m s; default-config runs "
                     "filtered h<0 %.2f %% / h_margin %.4f m s (unfiltered up to %.1f m s), %.1f s",
                     min_h, kCoarseDt * v_max, kCoarseDt, floor_coarse, floor_fine, ratio,
                     required_ratio, active, kInvarianceScenarios, h_neg_pct_max, h_margin_max,
                     table_h_neg, table_h_margin, unfiltered_h_margin, elapsed);
    return out;
}

// ---------------------------------------------------------------------------

// Least-squares amplitude of a sin(wt) + b cos(wt) + c over t >= t_from.
double fitted_amplitude(const SimTrace& tr, double omega, double t_from) {
    double m[3][4] = {};
    for (std::size_t k = 0; k < tr.size(); ++k) {
        if (tr.time[k] < t_from) {
            continue;
        }
        const double basis[3] = {std::sin(omega * tr.time[k]), std::cos(omega * tr.time[k]), 1.0};
        for (int p = 0; p < 3; ++p) {
            for (int q = 0; q < 3; ++q) {
                m[p][q] += basis[p] * basis[q];
            }
            m[p][3] += basis[p] * tr.speed[k];
        }
    }
    for (int c = 0; c < 3; ++c) {
        int pivot = c;
        for (int r = c + 1; r < 3; ++r) {
            if (std::abs(m[r][c]) > std::abs(m[pivot][c])) {
                pivot = r;
            }
        }
        for (int q = 0; q < 4; ++q) {
            std::swap(m[c][q], m[pivot][q]);
        }
        for (int r = 0; r < 3; ++r) {
            if (r != c) {
                const double f = m[r][c] / m[c][c];
                for (int q = c; q < 4; ++q) {
                    m[r][q] -= f * m[c][q];
                }
            }
        }
    }
    return std::hypot(m[0][3] / m[0][0], m[1][3] / m[1][1]);
}

Outcome criterion3() {
    const auto start = std::chrono::steady_clock::now();
    const double duration = 200.0;
    const std::size_t bin = 10;
    const double omega = 2.0 * kPi * static_cast<double>(bin) / duration;
    const TrafficDataset ds =
        synthetic_tones(1, duration, 0.1, 15.0, {{0, kToneAmplitude, omega, 0.7}});
    ControllerGains gains;
    gains.betas = {0.5};

    const SpectralDecomposition spec = decompose(ds);
    const double chi = std::abs(response_spectrum(spec, gains)[bin - 1]);
    const ScenarioResult r = simulate(ds, gains, SafetyParams{}, SimConfig{});
    const double amplitude = fitted_amplitude(r.trace, omega, duration / 2.0);
    const double rel = std::abs(amplitude - chi) / chi;

    std::size_t saturated = 0;
    for (auto s : r.trace.saturation_active) {
        saturated += s;
    }
    bool linear_range = true;
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
        const double d = r.trace.headway[k];
        linear_range = linear_range && gains.kappa * (d - gains.d_st) > 0.0 &&
                       gains.kappa * (d - gains.d_st) < gains.v_max &&
                       r.trace.speed[k] < gains.v_max;
    }

    const double elapsed = seconds_since(start);
    Outcome out;
    out.pass = rel <= kLinearRelTol && r.metrics.filter_active_pct == 0.0 && saturated == 0 &&
               linear_range && elapsed < kCriterion3Seconds;
    out.detail = fmt("omega %.4f rad/s: simulated %.6f m/s vs predicted %.6f m/s "
                     "(rel err %.2e), filter active %.2f %%, saturated samples %zu, %.2f s",
                     omega, amplitude, chi, rel, r.metrics.filter_active_pct, saturated, elapsed);
    return out;
}

// ---------------------------------------------------------------------------

Outcome criterion4() {
    double worst_sample = 0.0;
    double worst_power = 0.0;
    for (double duration : {200.0, 200.1}) {
        StopAndGoOptions options;
        options.duration = duration;
        options.seed = 9;
        const TrafficDataset ds = synthetic_stop_and_go(options);
        const SpectralDecomposition spec = decompose(ds);
        const std::size_t period = ds.samples() - 1;
        for (std::size_t i = 0; i < ds.vehicles(); ++i) {
            double scale = 0.0;
            double mean_square = 0.0;
            for (std::size_t k = 0; k < period; ++k) {
                const double x = ds.speeds[i][k] - spec.v_star;
                scale = std::max(scale, std::abs(x));
                mean_square += x * x;
            }
            mean_square /= static_cast<double>(period);
            for (std::size_t k = 0; k < period; ++k) {
                const double x = ds.speeds[i][k] - spec.v_star;
                worst_sample =
                    std::max(worst_sample, std::abs(reconstruct(spec, i, ds.time(k)) - x) / scale);
            }
            worst_power = std::max(worst_power,
                                   std::abs(spectral_power(spec, i) - mean_square) / mean_square);
        }
    }
    Outcome out;
    out.pass = worst_sample <= kReconstructionRelTol && worst_power <= kReconstructionRelTol;
    out.detail = fmt("max sample rel err %.2e, max power rel err %.2e (odd and even periods)",
                     worst_sample, worst_power);
    return out;
}

// ---------------------------------------------------------------------------

Outcome criterion5() {
    const double duration = 100.0;
    const double omega = 2.0 * kPi * 7.0 / duration;
    const double rho = 1.3;
    const TrafficDataset ds = synthetic_tones(1, duration, 0.1, 14.0, {{0, rho, omega, 0.4}});
    const FixedGains fixed;
    const OptimizationReport report =
        optimize_gains(decompose(ds), fixed, BetaBox{}, OptimizerMethod::kGrid, 1);

    // Independent cost: omega^2 rho^2 |Gamma_1(i omega)|^2 with Gamma_1 written out.
    std::size_t best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= 20; ++k) {
        const double beta = 0.0 + static_cast<double>(k) * 0.1;
        const std::complex<double> s(0.0, omega);
        const std::complex<double> gamma = (fixed.alpha * fixed.kappa + beta * s) /
                                           (s * s + (fixed.alpha + beta) * s +
                                            fixed.alpha * fixed.kappa);
        const double cost = omega * omega * rho * rho * std::norm(gamma);
        if (cost < best_cost) {
            best_cost = cost;
            best = k;
        }
    }
    const double oracle_beta = static_cast<double>(best) * 0.1;
    Outcome out;
    out.pass = report.gains.betas[0] == oracle_beta;
    out.detail = fmt("grid argmin beta %.1f (J %.6e), oracle beta %.1f (cost %.6e)",
                     report.gains.betas[0], report.grid_cost, oracle_beta, best_cost);
    return out;
}

// ---------------------------------------------------------------------------

std::vector<double> ranks(const std::vector<double>& x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) {
            ++j;
        }
        for (std::size_t k = i; k <= j; ++k) {
            r[order[k]] = 0.5 * static_cast<double>(i + j);
        }
        i = j + 1;
    }
    return r;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    const std::vector<double> ra = ranks(a);
    const std::vector<double> rb = ranks(b);
    const double n = static_cast<double>(a.size());
    const double mean = (n - 1.0) / 2.0;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (ra[i] - mean) * (rb[i] - mean);
        saa += (ra[i] - mean) * (ra[i] - mean);
        sbb += (rb[i] - mean) * (rb[i] - mean);
    }
    return sab / std::sqrt(saa * sbb);
}

Outcome criterion6() {
    const double duration = 200.0;
    const double w0 = 2.0 * kPi / duration;
    const std::vector<Tone> tones{
        {0, 0.40, 8.0 * w0, 0.3},  {1, 0.40, 8.0 * w0, 1.5},  {0, 0.25, 20.0 * w0, 0.0},
        {1, 0.20, 20.0 * w0, 1.0}, {0, 0.15, 45.0 * w0, 2.0}, {1, 0.15, 45.0 * w0, 2.9}};
    const TrafficDataset ds = synthetic_tones(2, duration, 0.1, 15.0, tones);
    const SpectralDecomposition spec = decompose(ds);
    const FixedGains fixed;
    const BetaLattice lattice(2, BetaBox{});

    std::vector<double> costs, energies;
    double filter_max = 0.0;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        const ControllerGains gains = fixed.with_betas(lattice.point(i));
        if (!is_plant_stable(gains, kStabilityMargin)) {
            continue;
        }
        costs.push_back(objective_j(spec, gains));
        const ScenarioResult r = simulate(ds, gains, SafetyParams{}, SimConfig{});
        energies.push_back(r.metrics.w);
        filter_max = std::max(filter_max, r.metrics.filter_active_pct);
    }
    const double rho = spearman(costs, energies);
    Outcome out;
    out.pass = rho > kMinSpearman;
    out.detail = fmt("Spearman %.4f over %zu feasible points (max filter activity %.2f %%)", rho,
                     costs.size(), filter_max);
    return out;
}

// ---------------------------------------------------------------------------

Outcome criterion7() {
    std::vector<NamedDataset> sets;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        StopAndGoOptions options;
        options.vehicles = 3;
        options.seed = seed;
        sets.push_back({"stop_and_go_" + std::to_string(seed), synthetic_stop_and_go(options)});
    }

    bool all_lower = true;
    bool consistent = true;
    double min_reduction = std::numeric_limits<double>::infinity();
    double max_reduction = -std::numeric_limits<double>::infinity();
    std::size_t cases = 0;
    for (std::size_t train = 0; train < sets.size(); ++train) {
        std::vector<NamedDataset> tests;
        for (std::size_t k = 0; k < sets.size(); ++k) {
            if (k != train) {
                tests.push_back(sets[k]);
            }
        }
        const Comparison c = compare_designs(sets[train].data, tests, 3, FixedGains{},
                                             OptimizerSettings{}, SafetyParams{}, VehicleParams{},
                                             SimConfig{}, false);
        for (std::size_t k = 0; k < tests.size(); ++k) {
            const ComparisonRow& row = c.rows[k];
            all_lower = all_lower && row.ccc.w < row.acc.w;
            min_reduction = std::min(min_reduction, row.reduction_pct);
            max_reduction = std::max(max_reduction, row.reduction_pct);
            ++cases;
            // Re-run both designs so their traces are audited too.
            const double w_acc = simulate(tests[k].data, c.acc, {}, {}).metrics.w;
            const double w_ccc = simulate(tests[k].data, c.ccc, {}, {}).metrics.w;
            consistent = consistent && w_acc == row.acc.w && w_ccc == row.ccc.w;
        }
    }
    Outcome out;
    out.pass = all_lower && consistent;
    out.detail = fmt("CCC (n=3) below ACC (n=1) in %s of %zu train/test cases, "
                     "reduction %.2f %% .. %.2f %%",
                     all_lower ? "all" : "NOT all", cases, min_reduction, max_reduction);
    return out;
}

// ---------------------------------------------------------------------------

Outcome criterion8() {
    const double speed = 18.0;
    TrafficDataset ds;
    ds.dt = 0.1;
    ds.speeds.assign(3, std::vector<double>(5001, speed));
    ControllerGains gains;
    gains.betas = {0.3, 0.2, 0.1};
    SimConfig config;
    config.dt = 0.01;
    config.integrator = Integrator::kRk4;
    const ScenarioResult r = simulate(ds, gains, SafetyParams{}, config);
    const double d_eq = gains.equilibrium_headway(speed);
    double drift_v = 0.0;
    double drift_d = 0.0;
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
        drift_v = std::max(drift_v, std::abs(r.trace.speed[k] - speed));
        drift_d = std::max(drift_d, std::abs(r.trace.headway[k] - d_eq));
    }
    Outcome out;
    out.pass = drift_v < kDriftSpeedTol && drift_d < kDriftHeadwayTol &&
               r.trace.time.back() == 500.0;
    out.detail = fmt("over %.0f s: max |dv| %.2e m/s, max |dD| %.2e m", r.trace.time.back(),
                     drift_v, drift_d);
    return out;
}

// ---------------------------------------------------------------------------

Outcome criterion9() {
    const VehicleParams vehicle;
    double worst = 0.0;
    for (double vc : {5.0, 12.0, 20.0, 28.0}) {
        const double duration = 300.0;
        TrafficDataset ds;
        ds.dt = 0.1;
        ds.speeds.assign(1, std::vector<double>(3001, vc));
        const ScenarioResult r = simulate(ds, ControllerGains{}, SafetyParams{}, SimConfig{});
        const double oracle = vc * resistance(vc, vehicle) * duration;
        worst = std::max(worst, std::abs(r.metrics.w - oracle) / oracle);
    }
    Outcome out;
    out.pass = worst <= kCruiseRelTol && audit.violations == 0 && audit.energy_mismatches == 0 &&
               audit.traces > 0;
    out.detail = fmt("cruise energy rel err %.2e; split identity checked on %zu samples of %zu "
                     "traces, %zu violations, %zu energy mismatches",
                     worst, audit.samples, audit.traces, audit.violations,
                     audit.energy_mismatches);
    return out;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"CBF continuity", criterion1},
        {"forward invariance", criterion2},
        {"linearization fidelity", criterion3},
        {"spectral reconstruction", criterion4},
        {"optimizer oracle", criterion5},
        {"J-vs-w ranking", criterion6},
        {"connectivity benefit", criterion7},
        {"equilibrium regression", criterion8},
        {"energy bookkeeping", criterion9},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failures += outcome.pass ? 0 : 1;
        std::printf("%s criterion %zu [PRIMARY] %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
