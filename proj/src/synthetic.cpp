#include "safeccc/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "safeccc/errors.hpp"

namespace safeccc {

TrafficDataset synthetic_stop_and_go(const StopAndGoOptions& o) {
    if (o.vehicles == 0 || !(o.duration > 0.0) || !(o.sample_dt > 0.0)) {
        throw ContractError("synthetic: need at least one vehicle and positive durations");
    }
    constexpr double kStep = 0.01;
    const auto substeps = static_cast<std::size_t>(std::llround(o.sample_dt / kStep));
    const auto samples = static_cast<std::size_t>(std::llround(o.duration / o.sample_dt)) + 1;
    const std::size_t total = (samples - 1) * substeps;
    const auto delay = static_cast<std::size_t>(std::llround(o.reaction_delay / kStep));

    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw_target = [&] {
        return unit(rng) < o.stop_probability ? 0.0
                                              : o.min_cruise + (o.max_cruise - o.min_cruise) * unit(rng);
    };

    // chain[0] is the head vehicle; the dataset lists vehicles nearest-first.
    const std::size_t n = o.vehicles;
    std::vector<std::vector<double>> speed(n, std::vector<double>(total + 1));
    std::vector<std::vector<double>> pos(n, std::vector<double>(total + 1));

    const double v0 = o.min_cruise + (o.max_cruise - o.min_cruise) * unit(rng);
    const double gap0 = o.driver_standstill + v0 / o.driver_kappa;
    for (std::size_t c = 0; c < n; ++c) {
        speed[c][0] = v0;
        pos[c][0] = -static_cast<double>(c) * gap0;
    }

    double target = v0;
    double segment_end = o.min_segment + (o.max_segment - o.min_segment) * unit(rng);
    double head_accel = 0.0;
    for (std::size_t k = 0; k < total; ++k) {
        const double t = static_cast<double>(k) * kStep;
        if (t >= segment_end) {
            target = draw_target();
            segment_end += o.min_segment + (o.max_segment - o.min_segment) * unit(rng);
        }
        // First-order lag on the head acceleration keeps the profile smooth.
        const double wanted = std::clamp(0.4 * (target - speed[0][k]), -o.head_decel, o.max_accel);
        head_accel += kStep / 0.8 * (wanted - head_accel);
        double a = head_accel;

        for (std::size_t c = 0; c < n; ++c) {
            if (c > 0) {
                const std::size_t lagged = k >= delay ? k - delay : 0;
                const double gap = pos[c - 1][lagged] - pos[c][lagged];
                const double desired =
                    std::clamp(o.driver_kappa * (gap - o.driver_standstill), 0.0, o.max_cruise + 8.0);
                a = o.driver_alpha * (desired - speed[c][lagged]) +
                    o.driver_beta * (speed[c - 1][lagged] - speed[c][lagged]);
                a = std::clamp(a, -o.max_decel, o.max_accel);
            }
            double next = speed[c][k] + kStep * a;
            if (next < 0.0) {
                next = 0.0;
            }
            pos[c][k + 1] = pos[c][k] + 0.5 * kStep * (speed[c][k] + next);
            speed[c][k + 1] = next;
        }
    }

    TrafficDataset ds;
    ds.t0 = 0.0;
    ds.dt = o.sample_dt;
    ds.speeds.assign(n, std::vector<double>(samples));
    ds.positions.assign(n, std::vector<double>(samples));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = n - 1 - i;
        for (std::size_t s = 0; s < samples; ++s) {
            ds.speeds[i][s] = speed[c][s * substeps];
            ds.positions[i][s] = pos[c][s * substeps];
        }
    }
    return ds;
}

TrafficDataset synthetic_tones(std::size_t vehicles, double duration, double sample_dt,
                               double mean_speed, const std::vector<Tone>& tones) {
    if (vehicles == 0 || !(duration > 0.0) || !(sample_dt > 0.0)) {
        throw ContractError("synthetic: need at least one vehicle and positive durations");
    }
    const auto samples = static_cast<std::size_t>(std::llround(duration / sample_dt)) + 1;
    TrafficDataset ds;
    ds.t0 = 0.0;
    ds.dt = sample_dt;
    ds.speeds.assign(vehicles, std::vector<double>(samples, mean_speed));
    for (const Tone& tone : tones) {
        if (tone.vehicle >= vehicles) {
            throw ContractError("synthetic: tone refers to a missing vehicle");
        }
        auto& series = ds.speeds[tone.vehicle];
        for (std::size_t k = 0; k < samples; ++k) {
            series[k] += tone.amplitude * std::sin(tone.omega * ds.time(k) + tone.phase);
        }
    }
    return ds;
}

} // namespace safeccc
