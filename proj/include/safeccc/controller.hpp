#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace safeccc {

/**
 * Connected cruise control parameters.
 *
 * betas[i] weighs the speed of the (i+1)-th vehicle ahead; index 0 is the
 * immediate predecessor. A single beta gives plain adaptive cruise control.
 * The range-policy time headway is 1 / kappa.
 */
struct ControllerGains {
    double alpha = 0.4;                ///< headway gain [1/s]
    double kappa = 0.6;                ///< range-policy gradient [1/s]
    std::vector<double> betas{0.5};    ///< speed-feedback gains [1/s]
    double v_max = 30.0;               ///< free-flow speed [m/s]
    double d_st = 5.0;                 ///< standstill distance [m]

    std::size_t vehicles() const noexcept { return betas.size(); }
    double beta_sum() const noexcept;
    /// Headway at which the range policy asks for speed v (valid for v < v_max).
    double equilibrium_headway(double v) const noexcept { return d_st + v / kappa; }
};

/// Desired speed for a given headway; piecewise linear, saturating at 0 and v_max.
double range_policy(double headway, const ControllerGains& gains);

/// Speed cap applied to observed vehicle speeds.
double speed_policy(double speed, const ControllerGains& gains);

/// Nominal CCC acceleration. `lead_speeds` must hold one entry per beta.
double ccc_acceleration(double headway, double v, std::span<const double> lead_speeds,
                        const ControllerGains& gains);

/// Membership in the plant-stable set: alpha > margin, kappa > margin and
/// alpha + sum(beta) > margin.
bool is_plant_stable(const ControllerGains& gains, double margin = 0.0);

} // namespace safeccc
