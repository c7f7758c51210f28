#pragma once

#include <cstddef>
#include <vector>

namespace safeccc {

/**
 * Uniformly sampled speed (and optionally position) histories of the n
 * vehicles ahead of the ego vehicle. speeds[0] is the immediate predecessor,
 * speeds[n-1] the farthest one.
 */
struct TrafficDataset {
    double t0 = 0.0;
    double dt = 0.1;
    std::vector<std::vector<double>> speeds;    ///< [vehicle][sample] m/s
    std::vector<std::vector<double>> positions; ///< empty, or [vehicle][sample] m

    std::size_t vehicles() const noexcept { return speeds.size(); }
    std::size_t samples() const noexcept { return speeds.empty() ? 0 : speeds.front().size(); }
    double tf() const noexcept { return t0 + dt * static_cast<double>(samples() - 1); }
    double time(std::size_t k) const noexcept { return t0 + dt * static_cast<double>(k); }
    bool has_positions() const noexcept { return !positions.empty(); }

    /// Throws ContractError unless n >= 1, all series share a length >= 2,
    /// dt > 0 and speeds are finite and non-negative.
    void validate() const;

    bool operator==(const TrafficDataset&) const = default;
};

} // namespace safeccc
