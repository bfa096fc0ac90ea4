// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#ifndef OPCAL_PROPAGATE_HPP
#define OPCAL_PROPAGATE_HPP

#include "opcal/operator_spectrum.hpp"
#include "opcal/spectral_field.hpp"
#include "opcal/transport_constants.hpp"

namespace opcal {

/// Exact propagator of the generalized 1D transport model over an elapsed
/// time t >= 0:
///   c_k(t0 + t) = c_k(t0) * exp([mu_k - i u w_k] t).
/// The k = 0 coefficient is invariant (mu_0 = 0) and every |c_k| is
/// nonincreasing because Re(mu_k) <= 0.
SpectralField propagate_exact(const SpectralField& c0, const OperatorSpectrum& spectrum,
                              const TransportConstants& constants, double t);

/// Per-mode growth factor exp([mu_k - i u w_k] t) for k >= 0.
std::complex<double> propagator_factor(const OperatorSpectrum& spectrum,
                                       const TransportConstants& constants, int k,
                                       double t);

}  // namespace opcal

#endif
