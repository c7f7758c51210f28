#include "safeccc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include <fftw3.h>

#include "safeccc/errors.hpp"

namespace safeccc {

namespace {

struct PlanDeleter {
    void operator()(fftw_plan_s* plan) const { fftw_destroy_plan(plan); }
};
struct BufferDeleter {
    void operator()(void* buffer) const { fftw_free(buffer); }
};

using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

void require_compatible(const SpectralDecomposition& spec, const ControllerGains& gains) {
    if (spec.vehicles() != gains.vehicles()) {
        throw ContractError("spectrum has " + std::to_string(spec.vehicles()) +
                            " vehicles but gains have " + std::to_string(gains.vehicles()));
    }
    if (!is_plant_stable(gains)) {
        throw ContractError("gains are outside the plant-stable set");
    }
}

} // namespace

std::size_t nyquist_limit(const TrafficDataset& ds) {
    return ds.samples() < 2 ? 0 : (ds.samples() - 1) / 2;
}

SpectralDecomposition decompose(const TrafficDataset& ds, std::optional<std::size_t> components) {
    ds.validate();
    const std::size_t limit = nyquist_limit(ds);
    const std::size_t m = components.value_or(limit);
    if (m > limit) {
        throw ContractError("decompose: " + std::to_string(m) +
                            " components requested, Nyquist limit is " + std::to_string(limit));
    }

    const std::size_t period = ds.samples() - 1;
    const std::size_t n = ds.vehicles();

    SpectralDecomposition spec;
    spec.t0 = ds.t0;
    spec.period_samples = period;
    spec.frequency_step = 2.0 * std::numbers::pi / (ds.dt * static_cast<double>(period));
    spec.omega.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        spec.omega[j] = spec.frequency_step * static_cast<double>(j + 1);
    }

    double total = 0.0;
    for (const auto& series : ds.speeds) {
        for (std::size_t k = 0; k < period; ++k) {
            total += series[k];
        }
    }
    spec.v_star = total / static_cast<double>(n * period);

    std::unique_ptr<double, BufferDeleter> input(
        static_cast<double*>(fftw_malloc(sizeof(double) * period)));
    const std::size_t bins = period / 2 + 1;
    std::unique_ptr<fftw_complex, BufferDeleter> output(
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins)));
    Plan plan(fftw_plan_dft_r2c_1d(static_cast<int>(period), input.get(), output.get(),
                                   FFTW_ESTIMATE));
    if (!plan) {
        throw ContractError("decompose: could not create FFT plan");
    }

    const double scale = 1.0 / static_cast<double>(period);
    spec.offsets.resize(n);
    spec.components.assign(n, std::vector<std::complex<double>>(m));
    for (std::size_t i = 0; i < n; ++i) {
        std::copy_n(ds.speeds[i].begin(), period, input.get());
        for (std::size_t k = 0; k < period; ++k) {
            input.get()[k] -= spec.v_star;
        }
        fftw_execute(plan.get());
        const fftw_complex* bin = output.get();
        spec.offsets[i] = bin[0][0] * scale;
        for (std::size_t j = 0; j < m; ++j) {
            const std::complex<double> x(bin[j + 1][0], bin[j + 1][1]);
            // A cos(wt + p) = A sin(wt + p + pi/2); interior bins carry both
            // the positive and the mirrored negative frequency.
            const bool nyquist = 2 * (j + 1) == period;
            const double weight = nyquist ? scale : 2.0 * scale;
            spec.components[i][j] = weight * x * std::complex<double>(0.0, 1.0);
        }
    }
    return spec;
}

SpectralDecomposition truncate_by_energy(const SpectralDecomposition& spec, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw ContractError("truncate_by_energy: fraction must lie in (0, 1]");
    }
    std::vector<double> power(spec.size(), 0.0);
    for (const auto& row : spec.components) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            power[j] += std::norm(row[j]);
        }
    }
    double total = 0.0;
    for (double p : power) {
        total += p;
    }
    std::size_t keep = spec.size();
    if (total > 0.0) {
        double running = 0.0;
        for (std::size_t j = 0; j < power.size(); ++j) {
            running += power[j];
            if (running >= fraction * total) {
                keep = j + 1;
                break;
            }
        }
    } else {
        keep = 0;
    }

    SpectralDecomposition out = spec;
    out.omega.resize(keep);
    for (auto& row : out.components) {
        row.resize(keep);
    }
    return out;
}

double reconstruct(const SpectralDecomposition& spec, std::size_t vehicle, double t) {
    double value = spec.offsets.at(vehicle);
    const auto& row = spec.components.at(vehicle);
    for (std::size_t j = 0; j < spec.size(); ++j) {
        value += std::abs(row[j]) * std::sin(spec.omega[j] * (t - spec.t0) + std::arg(row[j]));
    }
    return value;
}

double spectral_power(const SpectralDecomposition& spec, std::size_t vehicle) {
    const double offset = spec.offsets.at(vehicle);
    double power = offset * offset;
    const auto& row = spec.components.at(vehicle);
    for (std::size_t j = 0; j < row.size(); ++j) {
        // The Nyquist bin is a pure alternating sequence: its samples have
        // mean square rho^2 rather than rho^2 / 2.
        const bool nyquist = 2 * (j + 1) == spec.period_samples;
        power += nyquist ? std::norm(row[j]) : 0.5 * std::norm(row[j]);
    }
    return power;
}

std::complex<double> link_transfer(std::complex<double> lambda, std::size_t vehicle,
                                   const ControllerGains& gains) {
    if (vehicle >= gains.vehicles()) {
        throw ContractError("link_transfer: vehicle index out of range");
    }
    const double stiffness = gains.alpha * gains.kappa;
    const std::complex<double> den =
        lambda * lambda + (gains.alpha + gains.beta_sum()) * lambda + stiffness;
    if (den == 0.0) {
        throw ContractError("link_transfer: characteristic polynomial vanishes at lambda");
    }
    std::complex<double> num = lambda * gains.betas[vehicle];
    if (vehicle == 0) {
        num += stiffness;
    }
    return num / den;
}

std::vector<std::complex<double>> response_spectrum(const SpectralDecomposition& spec,
                                                    const ControllerGains& gains) {
    require_compatible(spec, gains);
    const double stiffness = gains.alpha * gains.kappa;
    const double damping = gains.alpha + gains.beta_sum();
    std::vector<std::complex<double>> out(spec.size());
    for (std::size_t j = 0; j < spec.size(); ++j) {
        const std::complex<double> lambda(0.0, spec.omega[j]);
        const std::complex<double> den = lambda * lambda + damping * lambda + stiffness;
        std::complex<double> num = stiffness * spec.components[0][j];
        for (std::size_t i = 0; i < spec.vehicles(); ++i) {
            num += lambda * gains.betas[i] * spec.components[i][j];
        }
        out[j] = num / den;
    }
    return out;
}

double objective_j(const SpectralDecomposition& spec, const ControllerGains& gains) {
    const auto response = response_spectrum(spec, gains);
    double cost = 0.0;
    for (std::size_t j = 0; j < response.size(); ++j) {
        cost += spec.omega[j] * spec.omega[j] * std::norm(response[j]);
    }
    return cost;
}

} // namespace safeccc
