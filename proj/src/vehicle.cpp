#include "safeccc/vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "safeccc/errors.hpp"

namespace safeccc {

namespace {

void require_speed(double v, const char* op) {
    if (!(v >= 0.0)) {
        throw ContractError(std::string(op) + ": speed must be non-negative, got " +
                            std::to_string(v));
    }
}

} // namespace

void VehicleParams::validate(double v_max) const {
    if (!(mass > 0.0) || !(effective_mass >= mass)) {
        throw ContractError("vehicle: require effective_mass >= mass > 0");
    }
    if (!(rolling_resistance >= 0.0) || !(air_drag >= 0.0)) {
        throw ContractError("vehicle: resistance coefficients must be non-negative");
    }
    if (!(gravity > 0.0)) {
        throw ContractError("vehicle: gravity must be positive");
    }
    if (!(brake_min < 0.0) || !(accel_max > 0.0)) {
        throw ContractError("vehicle: require brake_min < 0 < accel_max");
    }
    if (!(length >= 0.0)) {
        throw ContractError("vehicle: length must be non-negative");
    }
    // The traction limit is piecewise linear and concave, so its minimum on
    // an interval is attained at an endpoint.
    if (!(v_max > 0.0)) {
        throw ContractError("vehicle: v_max must be positive");
    }
    if (!(accel_upper_limit(0.0, *this) > 0.0) || !(accel_upper_limit(v_max, *this) > 0.0)) {
        throw ContractError("vehicle: traction limit must stay positive on [0, v_max]");
    }
}

double resistance(double v, const VehicleParams& params) {
    require_speed(v, "resistance");
    return (params.mass * params.gravity * params.rolling_resistance + params.air_drag * v * v) /
           params.effective_mass;
}

double accel_upper_limit(double v, const VehicleParams& params) {
    require_speed(v, "accel_upper_limit");
    return std::min({params.accel_max, params.power_slope1 * v + params.power_intercept1,
                     params.power_slope2 * v + params.power_intercept2});
}

double saturate(double u, double v, const VehicleParams& params) {
    return std::min(std::max(u, params.brake_min), accel_upper_limit(v, params));
}

double lower_level_command(double a_desired, double v, const VehicleParams& params,
                           double mismatch) {
    return mismatch * resistance(v, params) + a_desired;
}

PlantRate plant_derivative(double /*headway*/, double v, double lead_speed, double u,
                           const VehicleParams& params) {
    return {lead_speed - v, -resistance(v, params) + saturate(u, v, params)};
}

} // namespace safeccc
