#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "safeccc/dataset.hpp"

namespace safeccc {

/**
 * Human-driven chain for synthetic stop-and-go data. The head vehicle tracks
 * piecewise-constant random target speeds (some of them zero); each follower
 * runs an optimal-velocity model with a reaction delay, which amplifies the
 * waves down the chain. Speeds of the farthest vehicle therefore lead the
 * nearest ones in phase.
 */
struct StopAndGoOptions {
    std::size_t vehicles = 3;
    double duration = 500.0;     ///< [s]
    double sample_dt = 0.1;      ///< [s]
    double min_cruise = 6.0;     ///< [m/s]
    double max_cruise = 22.0;    ///< [m/s]
    double stop_probability = 0.3;
    double min_segment = 25.0;   ///< [s]
    double max_segment = 60.0;   ///< [s]
    double max_accel = 2.0;      ///< [m/s^2]
    double max_decel = 4.0;      ///< [m/s^2], positive magnitude; bounds every vehicle
    double head_decel = 2.5;     ///< [m/s^2] braking of the head vehicle
    double driver_alpha = 0.4;   ///< [1/s]
    double driver_beta = 0.5;    ///< [1/s]
    double driver_kappa = 0.6;   ///< [1/s]
    double driver_standstill = 5.0; ///< [m]
    double reaction_delay = 0.6; ///< [s]
    std::uint64_t seed = 1;
};

TrafficDataset synthetic_stop_and_go(const StopAndGoOptions& options);

struct Tone {
    std::size_t vehicle = 0; ///< 0 = immediate predecessor
    double amplitude = 0.0;  ///< [m/s]
    double omega = 0.0;      ///< [rad/s]
    double phase = 0.0;      ///< [rad]
};

/// v_i(t) = mean_speed + sum of the tones of vehicle i, t measured from 0.
TrafficDataset synthetic_tones(std::size_t vehicles, double duration, double sample_dt,
                               double mean_speed, const std::vector<Tone>& tones);

} // namespace safeccc
