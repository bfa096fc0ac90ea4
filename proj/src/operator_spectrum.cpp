// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#include "opcal/operator_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace opcal {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;
constexpr double kThreeHalfPi = 3.0 * kPi / 2.0;
// Slack for roundoff at the argument bounds.
constexpr double kThetaSlack = 1e-12;
}  // namespace

OperatorSpectrum::OperatorSpectrum(const WaveGrid& g, Eigen::VectorXd r,
                                   Eigen::VectorXd theta)
    : grid(g), radii(std::move(r)), arguments(std::move(theta)) {
    require(radii.size() == grid.n_modes && arguments.size() == grid.n_modes,
            "OperatorSpectrum: need one (radius, argument) pair per retained mode");
    for (int i = 0; i < radii.size(); ++i) {
        require(radii[i] > 0.0, "OperatorSpectrum: radii must be positive (mode " +
                                    std::to_string(i + 1) + ")");
        require(arguments[i] >= kHalfPi - kThetaSlack &&
                    arguments[i] <= kThreeHalfPi + kThetaSlack,
                "OperatorSpectrum: argument outside [pi/2, 3pi/2] (mode " +
                    std::to_string(i + 1) + ")");
    }
}

std::complex<double> OperatorSpectrum::eigenvalue(int k) const {
    require(std::abs(k) <= grid.n_modes, "OperatorSpectrum: mode index out of range");
    if (k == 0) return {0.0, 0.0};
    const int i = std::abs(k) - 1;
    const std::complex<double> mu = std::polar(radii[i], arguments[i]);
    return k > 0 ? mu : std::conj(mu);
}

Eigen::VectorXcd OperatorSpectrum::eigenvalues() const {
    Eigen::VectorXcd mu(grid.n_modes);
    for (int k = 1; k <= grid.n_modes; ++k) mu[k - 1] = eigenvalue(k);
    return mu;
}

RescaledParameters::RescaledParameters(const WaveGrid& g, Eigen::VectorXd rs,
                                       Eigen::VectorXd ts)
    : grid(g), r_star(std::move(rs)), theta_star(std::move(ts)) {
    require(r_star.size() == grid.n_modes && theta_star.size() == grid.n_modes,
            "RescaledParameters: need one (r*, theta*) pair per retained mode");
}

double radius_offset(const WaveGrid& grid, int k) {
    require(k != 0, "radius_offset: k = 0 is excluded from the parametrization");
    return grid.wavenumber(std::abs(k));
}

double radius_scale(const WaveGrid& grid, int k) {
    require(k != 0, "radius_scale: k = 0 is excluded from the parametrization");
    const double w = grid.wavenumber(std::abs(k));
    const double scale = w * w - w;
    require(std::abs(scale) > 1e-12,
            "radius_scale: degenerate wavenumber w_k = 1 (choose a domain length "
            "that is not a multiple of 2*pi*k)");
    return scale;
}

RescaledParameters rescale(const OperatorSpectrum& spectrum) {
    const int nk = spectrum.grid.n_modes;
    Eigen::VectorXd rs(nk), ts(nk);
    for (int k = 1; k <= nk; ++k) {
        rs[k - 1] = (spectrum.radii[k - 1] - radius_offset(spectrum.grid, k)) /
                    radius_scale(spectrum.grid, k);
        ts[k - 1] = (spectrum.arguments[k - 1] - kHalfPi) / kPi;
    }
    return RescaledParameters(spectrum.grid, std::move(rs), std::move(ts));
}

OperatorSpectrum unrescale(const RescaledParameters& params) {
    const int nk = params.grid.n_modes;
    Eigen::VectorXd r(nk), theta(nk);
    for (int k = 1; k <= nk; ++k) {
        r[k - 1] = radius_offset(params.grid, k) +
                   params.r_star[k - 1] * radius_scale(params.grid, k);
        theta[k - 1] = kHalfPi + kPi * params.theta_star[k - 1];
    }
    return OperatorSpectrum(params.grid, std::move(r), std::move(theta));
}

Eigen::VectorXcd lambda_from_mu(const OperatorSpectrum& spectrum,
                                const TransportConstants& constants) {
    const int nk = spectrum.grid.n_modes;
    Eigen::VectorXcd lambda(nk);
    for (int k = 1; k <= nk; ++k) {
        const double w = spectrum.grid.wavenumber(k);
        const std::complex<double> iw(0.0, w);
        lambda[k - 1] = (spectrum.eigenvalue(k) + constants.diffusivity * w * w) / iw;
    }
    return lambda;
}

Eigen::VectorXcd mu_from_lambda(const Eigen::VectorXcd& lambda, const WaveGrid& grid,
                                const TransportConstants& constants) {
    require(lambda.size() == grid.n_modes, "mu_from_lambda: size mismatch");
    Eigen::VectorXcd mu(grid.n_modes);
    for (int k = 1; k <= grid.n_modes; ++k) {
        const double w = grid.wavenumber(k);
        const std::complex<double> iw(0.0, w);
        mu[k - 1] = constants.diffusivity * iw * iw + lambda[k - 1] * iw;
    }
    return mu;
}

OperatorSpectrum frade_spectrum(const TransportConstants& constants, const WaveGrid& grid) {
    constants.validate();
    require(constants.diffusivity > 0.0, "frade_spectrum: diffusivity must be positive");
    const double alpha = constants.fractional_order;
    const int nk = grid.n_modes;
    Eigen::VectorXd r(nk), theta(nk);
    for (int k = 1; k <= nk; ++k) {
        const double w = grid.wavenumber(k);
        r[k - 1] = constants.diffusivity * std::pow(w, alpha);
        theta[k - 1] = alpha * kHalfPi;
    }
    return OperatorSpectrum(grid, std::move(r), std::move(theta));
}

OperatorSpectrum fickian_spectrum(double nu, const WaveGrid& grid) {
    require(nu > 0.0, "fickian_spectrum: nu must be positive");
    const int nk = grid.n_modes;
    Eigen::VectorXd r(nk), theta(nk);
    for (int k = 1; k <= nk; ++k) {
        const double w = grid.wavenumber(k);
        r[k - 1] = nu * w * w;
        theta[k - 1] = kPi;
    }
    return OperatorSpectrum(grid, std::move(r), std::move(theta));
}

OperatorSpectrum second_derivative_spectrum(const WaveGrid& grid) {
    return fickian_spectrum(1.0, grid);
}

OperatorSpectrum spectrum_from_eigenvalues(const WaveGrid& grid, const Eigen::VectorXcd& mu) {
    require(mu.size() == grid.n_modes, "spectrum_from_eigenvalues: size mismatch");
    const int nk = grid.n_modes;
    Eigen::VectorXd r(nk), theta(nk);
    for (int i = 0; i < nk; ++i) {
        const double radius = std::abs(mu[i]);
        require(radius > 0.0, "spectrum_from_eigenvalues: zero eigenvalue at mode " +
                                  std::to_string(i + 1));
        double arg = std::arg(mu[i]);     // (-pi, pi]
        if (arg < kHalfPi) arg += 2.0 * kPi;  // fold the lower half plane onto (pi, 3pi/2]
        require(arg >= kHalfPi - 1e-10 && arg <= kThreeHalfPi + 1e-10,
                "spectrum_from_eigenvalues: eigenvalue with positive real part at mode " +
                    std::to_string(i + 1));
        r[i] = radius;
        theta[i] = std::clamp(arg, kHalfPi, kThreeHalfPi);
    }
    return OperatorSpectrum(grid, std::move(r), std::move(theta));
}

}  // namespace opcal
