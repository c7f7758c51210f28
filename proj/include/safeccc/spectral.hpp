#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "safeccc/controller.hpp"
#include "safeccc/dataset.hpp"

namespace safeccc {

/**
 * One-sided Fourier representation of the detrended lead speeds.
 *
 * The record [t0, tf] is treated as one period of length T = tf - t0, so
 * omega_j = j * 2 pi / T and the transform uses the M = samples - 1 points
 * t0, ..., tf - dt (the closing sample is the periodic image of the first).
 * For vehicle i:
 *
 *     v_i(t) - v_star = offsets[i] + sum_j rho_ij sin(omega_j (t - t0) + phi_ij)
 *
 * with components[i][j] = rho_ij * exp(1i * phi_ij). `offsets` holds the
 * zero-frequency residual of each vehicle about the common v_star; it carries
 * no weight in the cost since omega_0 = 0.
 */
struct SpectralDecomposition {
    double v_star = 0.0;
    double t0 = 0.0;
    double frequency_step = 0.0;     ///< 2 pi / (tf - t0) [rad/s]
    std::size_t period_samples = 0;  ///< M
    std::vector<double> omega;       ///< omega_1 .. omega_m
    std::vector<double> offsets;
    std::vector<std::vector<std::complex<double>>> components; ///< [vehicle][j]

    std::size_t vehicles() const noexcept { return components.size(); }
    std::size_t size() const noexcept { return omega.size(); }
    double amplitude(std::size_t i, std::size_t j) const { return std::abs(components[i][j]); }
    double phase(std::size_t i, std::size_t j) const { return std::arg(components[i][j]); }
    /// True when the last retained frequency is the Nyquist bin of an even M.
    bool has_nyquist_bin() const noexcept {
        return period_samples % 2 == 0 && 2 * size() == period_samples;
    }
};

/// floor((tf - t0) / (2 dt)): the largest admissible component count.
std::size_t nyquist_limit(const TrafficDataset& ds);

/// Decompose the dataset. Defaults to the Nyquist limit; throws ContractError
/// when more components are requested than the limit allows.
SpectralDecomposition decompose(const TrafficDataset& ds,
                                std::optional<std::size_t> components = std::nullopt);

/// Keep the smallest leading m whose power (summed over vehicles) reaches
/// `fraction` of the total oscillatory power.
SpectralDecomposition truncate_by_energy(const SpectralDecomposition& spec, double fraction);

/// offsets[i] + sum_j rho sin(omega (t - t0) + phi), i.e. v_i(t) - v_star.
double reconstruct(const SpectralDecomposition& spec, std::size_t vehicle, double t);

/// Mean square of the detrended series implied by the components of one
/// vehicle (offset included). Equals the sample mean square at full m.
double spectral_power(const SpectralDecomposition& spec, std::size_t vehicle);

/// Link transfer function Gamma_i(lambda) from the speed of vehicle
/// `vehicle` (0-based, 0 = immediate predecessor) to the ego speed.
std::complex<double> link_transfer(std::complex<double> lambda, std::size_t vehicle,
                                   const ControllerGains& gains);

/// Steady-state complex amplitude chi_j exp(1i theta_j) of the ego speed at
/// each omega_j.
std::vector<std::complex<double>> response_spectrum(const SpectralDecomposition& spec,
                                                    const ControllerGains& gains);

/// J = sum_j omega_j^2 chi_j^2. Defined only on the plant-stable set.
double objective_j(const SpectralDecomposition& spec, const ControllerGains& gains);

} // namespace safeccc
