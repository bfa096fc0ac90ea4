// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#include "opcal/propagate.hpp"

#include <cmath>

namespace opcal {

std::complex<double> propagator_factor(const OperatorSpectrum& spectrum,
                                       const TransportConstants& constants, int k,
                                       double t) {
    const std::complex<double> mu = spectrum.eigenvalue(k);
    const std::complex<double> advection(0.0, constants.mean_velocity *
                                                  spectrum.grid.wavenumber(k));
    return std::exp((mu - advection) * t);
}

SpectralField propagate_exact(const SpectralField& c0, const OperatorSpectrum& spectrum,
                              const TransportConstants& constants, double t) {
    if (t < 0.0) throw PreconditionError("propagate_exact: elapsed time must be >= 0");
    require(c0.grid == spectrum.grid, "propagate_exact: field and spectrum grids differ");

    const int nk = c0.grid.n_modes;
    Eigen::VectorXcd coeff(c0.grid.n_coefficients());
    coeff[nk] = c0.coefficient(0);
    for (int k = 1; k <= nk; ++k) {
        const std::complex<double> factor = propagator_factor(spectrum, constants, k, t);
        const std::complex<double> ck = c0.coefficient(k) * factor;
        coeff[nk + k] = ck;
        coeff[nk - k] = std::conj(ck);
    }
    return SpectralField(c0.grid, std::move(coeff), c0.time_stamp + t);
}

}  // namespace opcal
