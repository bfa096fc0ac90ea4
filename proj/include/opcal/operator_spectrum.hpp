// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#ifndef OPCAL_OPERATOR_SPECTRUM_HPP
#define OPCAL_OPERATOR_SPECTRUM_HPP

#include <Eigen/Core>
#include <complex>

#include "opcal/transport_constants.hpp"
#include "opcal/wave_grid.hpp"

namespace opcal {

/// Eigenvalues mu_k of the composite diffusion operator in polar form.
///
/// Only k = 1..n_modes are free parameters: mu_0 = 0 (divergence-form
/// operator, conserves total mass) and mu_{-k} = conj(mu_k) (real fields
/// stay real). Arguments are confined to [pi/2, 3pi/2] so Re(mu_k) <= 0 and
/// every mode decays.
struct OperatorSpectrum {
    WaveGrid grid;
    Eigen::VectorXd radii;      // r_k > 0, index k-1
    Eigen::VectorXd arguments;  // theta_k in [pi/2, 3pi/2], index k-1

    OperatorSpectrum(const WaveGrid& g, Eigen::VectorXd r, Eigen::VectorXd theta);

    /// mu_k for any integer |k| <= n_modes (mu_0 = 0, conjugate for k < 0).
    std::complex<double> eigenvalue(int k) const;

    /// mu_k for k = 1..n_modes.
    Eigen::VectorXcd eigenvalues() const;
};

/// Image of the spectrum under the affine per-mode rescaling
///   r*_k = (r_k - w_k) / (w_k^2 - w_k),   theta*_k = (theta_k - pi/2) / pi,
/// which maps the admissible argument range onto [0,1] and normalizes the
/// radii against the advection (w_k) and diffusion (w_k^2) scales.
struct RescaledParameters {
    WaveGrid grid;
    Eigen::VectorXd r_star;
    Eigen::VectorXd theta_star;  // in [0,1]

    RescaledParameters(const WaveGrid& g, Eigen::VectorXd rs, Eigen::VectorXd ts);
};

// Per-mode scales of the affine map. Throw on k = 0 and on the degenerate
// wavenumbers w_k in {0, 1} where the radius denominator vanishes.
double radius_offset(const WaveGrid& grid, int k);  // w_k
double radius_scale(const WaveGrid& grid, int k);   // w_k^2 - w_k

RescaledParameters rescale(const OperatorSpectrum& spectrum);
OperatorSpectrum unrescale(const RescaledParameters& params);

/// lambda_k = (mu_k + nu w_k^2) / (i w_k) for k = 1..n_modes: the spectrum of
/// the enrichment operator implied by splitting off Fickian diffusion.
Eigen::VectorXcd lambda_from_mu(const OperatorSpectrum& spectrum,
                                const TransportConstants& constants);

/// Inverse of lambda_from_mu: mu_k = nu (i w_k)^2 + lambda_k (i w_k).
Eigen::VectorXcd mu_from_lambda(const Eigen::VectorXcd& lambda, const WaveGrid& grid,
                                const TransportConstants& constants);

/// Analytic fractional-diffusion spectrum mu_k = nu (i w_k)^alpha on the
/// principal branch: (i w)^alpha = w^alpha exp(i alpha pi / 2) for w > 0,
/// which has Re <= 0 exactly on alpha in [1, 2].
OperatorSpectrum frade_spectrum(const TransportConstants& constants, const WaveGrid& grid);

/// mu_k = -nu w_k^2 (classical diffusion).
OperatorSpectrum fickian_spectrum(double nu, const WaveGrid& grid);

/// mu_k = -w_k^2; in rescaled coordinates this is r* = 1, theta* = 1/2.
OperatorSpectrum second_derivative_spectrum(const WaveGrid& grid);

/// Polar conversion of explicit eigenvalues (k = 1..n_modes). Throws if any
/// value has positive real part or vanishes.
OperatorSpectrum spectrum_from_eigenvalues(const WaveGrid& grid, const Eigen::VectorXcd& mu);

}  // namespace opcal

#endif
