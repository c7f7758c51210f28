#pragma once

namespace safeccc {

/**
 * Longitudinal plant constants.
 *
 * Accelerations are expressed per unit mass (m/s^2). The two power-limit
 * lines bound the available traction at speed v by slope * v + intercept.
 */
struct VehicleParams {
    double mass = 1500.0;           ///< [kg]
    double effective_mass = 1500.0; ///< [kg], includes rotating inertia
    double rolling_resistance = 0.01;
    double air_drag = 0.45;         ///< [kg/m]
    double gravity = 9.81;          ///< [m/s^2]
    double brake_min = -7.0;        ///< strongest braking command [m/s^2], negative
    double accel_max = 3.0;         ///< [m/s^2]
    double power_slope1 = -0.05;    ///< [1/s]
    double power_intercept1 = 4.0;  ///< [m/s^2]
    double power_slope2 = -0.15;    ///< [1/s]
    double power_intercept2 = 6.0;  ///< [m/s^2]
    double length = 4.5;            ///< [m]

    /// Throws ContractError if the constants are unphysical or the traction
    /// limit is not positive somewhere on [0, v_max].
    void validate(double v_max) const;
};

/// Resistance deceleration f(v) = (m g zeta + k v^2) / m_eff. Rejects v < 0.
double resistance(double v, const VehicleParams& params);

/// Speed-dependent traction limit min{accel_max, line1(v), line2(v)}.
double accel_upper_limit(double v, const VehicleParams& params);

/// Clamp a command to the brake limit below and the traction limit above.
double saturate(double u, double v, const VehicleParams& params);

/// Lower-level command u = mismatch * f(v) + a_d. A mismatch of 1 models
/// perfect knowledge of the resistance.
double lower_level_command(double a_desired, double v, const VehicleParams& params,
                           double mismatch = 1.0);

struct PlantRate {
    double headway_rate; ///< dD/dt [m/s]
    double accel;        ///< dv/dt [m/s^2]
};

PlantRate plant_derivative(double headway, double v, double lead_speed, double u,
                           const VehicleParams& params);

} // namespace safeccc
