#pragma once

#include <span>

#include "safeccc/vehicle.hpp"

namespace safeccc {

/**
 * Control-barrier-function constants.
 *
 * Both decelerations are stored as positive magnitudes: `ego_decel` is the
 * braking the ego vehicle is assumed to deliver in an emergency and
 * `lead_decel` bounds the predecessor's braking (a1 >= -lead_decel).
 */
struct SafetyParams {
    double tau = 1.0;        ///< minimum time headway [s]
    double ego_decel = 5.0;  ///< [m/s^2]
    double lead_decel = 6.0; ///< [m/s^2]
    double gamma = 1.0;      ///< class-K gain [1/s]

    void validate() const;
    /// Checks that the plant can brake at ego_decel at every speed in
    /// [0, v_max] with the resistance compensation in place.
    void validate_brake_authority(const VehicleParams& vehicle, double v_max) const;
};

/**
 * Pieces of the stopping envelope B(v, v1). The minimum gap of a worst-case
 * braking event is reached right away (kImmediate), while the ego is still
 * decelerating (kDuringBraking, only when ego_decel > lead_decel), or once
 * the ego has stopped (kAtStop).
 */
enum class EnvelopeBranch { kImmediate, kDuringBraking, kAtStop };

/// Branch switching speeds for the lead vehicle.
double boundary_f1(double v, const SafetyParams& sp); ///< sqrt(a1/a) (v - a tau)
double boundary_f2(double v, const SafetyParams& sp); ///< v - a tau
double boundary_f3(double v, const SafetyParams& sp); ///< (a1/a) (v - a tau)

/// The branch that defines B at (v, v1). With ego_decel <= lead_decel the
/// split is at f1; otherwise v1 >= f2 is kImmediate, f3 <= v1 < f2 is
/// kDuringBraking and v1 < f3 is kAtStop.
EnvelopeBranch envelope_branch(double v, double v1, const SafetyParams& sp);

/// Evaluate one branch formula regardless of which branch is active.
/// kDuringBraking requires ego_decel > lead_decel.
double envelope_on_branch(EnvelopeBranch branch, double v, double v1, const SafetyParams& sp);

/// Stopping envelope B(v, v1) >= v tau. Continuous in both arguments.
double stopping_envelope(double v, double v1, const SafetyParams& sp);

/// Barrier h = D - B(v, v1); h >= 0 implies D >= v tau.
double barrier(double headway, double v, double v1, const SafetyParams& sp);

struct EnvelopeGradient {
    double d_speed;      ///< dB/dv [s], always >= tau
    double d_lead_speed; ///< dB/dv1 [s]
};

EnvelopeGradient envelope_gradient_on_branch(EnvelopeBranch branch, double v, double v1,
                                             const SafetyParams& sp);
EnvelopeGradient envelope_gradient(double v, double v1, const SafetyParams& sp);

/// Largest acceleration satisfying dh/dt >= -gamma h for the given lead
/// acceleration a1.
double cbf_acceleration(double headway, double v, double v1, double a1, const SafetyParams& sp);

/// min{a_nominal, cbf_acceleration(...)}: the closed-form solution of the
/// single-input CBF quadratic program, valid because dB/dv > 0.
double safety_filter(double a_nominal, double headway, double v, double v1, double a1,
                     const SafetyParams& sp);

/// True iff every sample respects a1 >= -lead_decel (inclusive).
bool lead_accel_within_bound(std::span<const double> lead_accels, const SafetyParams& sp);

} // namespace safeccc
