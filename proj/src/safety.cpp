#include "safeccc/safety.hpp"

#include <algorithm>
#include <cmath>

#include "safeccc/errors.hpp"

namespace safeccc {

void SafetyParams::validate() const {
    if (!(tau > 0.0) || !(ego_decel > 0.0) || !(lead_decel > 0.0) || !(gamma > 0.0)) {
        throw ContractError("safety: tau, ego_decel, lead_decel and gamma must be positive");
    }
}

void SafetyParams::validate_brake_authority(const VehicleParams& vehicle, double v_max) const {
    // Strongest requirement is at the top speed where the compensation term
    // f(v) eats most of the brake range.
    if (ego_decel + resistance(v_max, vehicle) > -vehicle.brake_min) {
        throw ContractError("safety: ego_decel exceeds the braking the plant can deliver at v_max");
    }
}

double boundary_f1(double v, const SafetyParams& sp) {
    return std::sqrt(sp.lead_decel / sp.ego_decel) * (v - sp.ego_decel * sp.tau);
}

double boundary_f2(double v, const SafetyParams& sp) {
    return v - sp.ego_decel * sp.tau;
}

double boundary_f3(double v, const SafetyParams& sp) {
    return sp.lead_decel / sp.ego_decel * (v - sp.ego_decel * sp.tau);
}

EnvelopeBranch envelope_branch(double v, double v1, const SafetyParams& sp) {
    if (sp.ego_decel <= sp.lead_decel) {
        return v1 >= boundary_f1(v, sp) ? EnvelopeBranch::kImmediate : EnvelopeBranch::kAtStop;
    }
    if (v1 >= boundary_f2(v, sp)) {
        return EnvelopeBranch::kImmediate;
    }
    if (v1 >= boundary_f3(v, sp)) {
        return EnvelopeBranch::kDuringBraking;
    }
    return EnvelopeBranch::kAtStop;
}

double envelope_on_branch(EnvelopeBranch branch, double v, double v1, const SafetyParams& sp) {
    const double a = sp.ego_decel;
    const double a1 = sp.lead_decel;
    const double base = v * sp.tau;
    switch (branch) {
    case EnvelopeBranch::kImmediate:
        return base;
    case EnvelopeBranch::kDuringBraking: {
        if (!(a > a1)) {
            throw ContractError("envelope: during-braking branch requires ego_decel > lead_decel");
        }
        const double closing = v - a * sp.tau - v1;
        return base + closing * closing / (2.0 * (a - a1));
    }
    case EnvelopeBranch::kAtStop: {
        const double x = v - a * sp.tau;
        return base + x * x / (2.0 * a) - v1 * v1 / (2.0 * a1);
    }
    }
    return base;
}

double stopping_envelope(double v, double v1, const SafetyParams& sp) {
    return envelope_on_branch(envelope_branch(v, v1, sp), v, v1, sp);
}

double barrier(double headway, double v, double v1, const SafetyParams& sp) {
    return headway - stopping_envelope(v, v1, sp);
}

EnvelopeGradient envelope_gradient_on_branch(EnvelopeBranch branch, double v, double v1,
                                             const SafetyParams& sp) {
    const double a = sp.ego_decel;
    const double a1 = sp.lead_decel;
    switch (branch) {
    case EnvelopeBranch::kImmediate:
        return {sp.tau, 0.0};
    case EnvelopeBranch::kDuringBraking: {
        if (!(a > a1)) {
            throw ContractError("envelope: during-braking branch requires ego_decel > lead_decel");
        }
        const double closing = (v - a * sp.tau - v1) / (a - a1);
        return {sp.tau + closing, -closing};
    }
    case EnvelopeBranch::kAtStop:
        return {sp.tau + (v - a * sp.tau) / a, -v1 / a1};
    }
    return {sp.tau, 0.0};
}

EnvelopeGradient envelope_gradient(double v, double v1, const SafetyParams& sp) {
    return envelope_gradient_on_branch(envelope_branch(v, v1, sp), v, v1, sp);
}

double cbf_acceleration(double headway, double v, double v1, double a1, const SafetyParams& sp) {
    const EnvelopeBranch branch = envelope_branch(v, v1, sp);
    const EnvelopeGradient grad = envelope_gradient_on_branch(branch, v, v1, sp);
    const double h = headway - envelope_on_branch(branch, v, v1, sp);
    return (v1 - v - grad.d_lead_speed * a1 + sp.gamma * h) / grad.d_speed;
}

double safety_filter(double a_nominal, double headway, double v, double v1, double a1,
                     const SafetyParams& sp) {
    return std::min(a_nominal, cbf_acceleration(headway, v, v1, a1, sp));
}

bool lead_accel_within_bound(std::span<const double> lead_accels, const SafetyParams& sp) {
    return std::all_of(lead_accels.begin(), lead_accels.end(),
                       [&](double a1) { return a1 >= -sp.lead_decel; });
}

} // namespace safeccc
