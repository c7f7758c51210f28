#include "safeccc/controller.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "safeccc/errors.hpp"

namespace safeccc {

double ControllerGains::beta_sum() const noexcept {
    return std::accumulate(betas.begin(), betas.end(), 0.0);
}

double range_policy(double headway, const ControllerGains& gains) {
    return std::min(gains.v_max, std::max(0.0, gains.kappa * (headway - gains.d_st)));
}

double speed_policy(double speed, const ControllerGains& gains) {
    return std::min(gains.v_max, speed);
}

double ccc_acceleration(double headway, double v, std::span<const double> lead_speeds,
                        const ControllerGains& gains) {
    if (lead_speeds.size() != gains.betas.size()) {
        throw ContractError("ccc_acceleration: " + std::to_string(lead_speeds.size()) +
                            " lead speeds for " + std::to_string(gains.betas.size()) + " gains");
    }
    double accel = gains.alpha * (range_policy(headway, gains) - v);
    for (std::size_t i = 0; i < lead_speeds.size(); ++i) {
        accel += gains.betas[i] * (speed_policy(lead_speeds[i], gains) - v);
    }
    return accel;
}

bool is_plant_stable(const ControllerGains& gains, double margin) {
    return gains.alpha > margin && gains.kappa > margin && gains.alpha + gains.beta_sum() > margin;
}

} // namespace safeccc
