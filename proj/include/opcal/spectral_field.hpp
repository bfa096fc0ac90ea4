// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#ifndef OPCAL_SPECTRAL_FIELD_HPP
#define OPCAL_SPECTRAL_FIELD_HPP

#include <Eigen/Core>
#include <complex>

#include "opcal/wave_grid.hpp"

namespace opcal {

/// Truncated Fourier representation of a real periodic field.
///
/// Coefficients are stored for k = -n_modes .. n_modes (index k + n_modes)
/// and must satisfy conjugate symmetry c_{-k} = conj(c_k) so that the
/// synthesized field is real.
struct SpectralField {
    WaveGrid grid;
    Eigen::VectorXcd coefficients;  // length 2*n_modes + 1
    double time_stamp = 0.0;

    SpectralField(const WaveGrid& g, Eigen::VectorXcd coeff, double t);

    std::complex<double> coefficient(int k) const {
        return coefficients[k + grid.n_modes];
    }

    /// Worst violation of c_{-k} = conj(c_k), relative to max |c|.
    double conjugate_asymmetry() const;
};

/// Discrete Fourier analysis of real samples on the grid, truncated to the
/// retained band. Throws on a length mismatch.
SpectralField analyze(const WaveGrid& grid, const Eigen::VectorXd& values,
                      double time_stamp = 0.0);

/// Real samples of sum_k c_k exp(i w_k x) on the grid points. Throws if the
/// coefficients break conjugate symmetry beyond 1e-10 relative.
Eigen::VectorXd synthesize(const SpectralField& field);

/// Field values at arbitrary positions (not restricted to grid points).
Eigen::VectorXd synthesize_at(const SpectralField& field, const Eigen::VectorXd& x);

}  // namespace opcal

#endif
