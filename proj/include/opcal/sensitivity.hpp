// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#ifndef OPCAL_SENSITIVITY_HPP
#define OPCAL_SENSITIVITY_HPP

#include "opcal/misfit.hpp"

namespace opcal {

/// Dimension reduction by Hessian-diagonal screening, done separately for
/// radii and arguments (the radii scale with wavenumber, the arguments do
/// not). The cutoff index is the highest wavenumber whose diagonal entry
/// still reaches gamma_tol times the largest one; ties at the threshold are
/// included. Active modes are all k <= max(k_r, k_theta).
struct SensitivityResult {
    Eigen::VectorXd radius_sensitivity;    // (H_rr)_kk at theta0, polar coordinates
    Eigen::VectorXd argument_sensitivity;  // (H_tt)_kk
    int cutoff_radius = 0;                 // k_r
    int cutoff_argument = 0;               // k_theta
    int cutoff = 0;                        // max of the two
    double gamma_tol = 1e-2;
};

SensitivityResult sensitivity_cutoff(const CalibrationProblem& problem,
                                     const ParameterVector& theta0, double gamma_tol);

/// The screening rule itself: highest index k (1-based) with
/// sens_k >= gamma_tol * max(sens). Zero if the vector is all zero.
int cutoff_index(const Eigen::VectorXd& sensitivities, double gamma_tol);

/// Copy of theta0 with modes 1..cutoff marked active.
ParameterVector apply_cutoff(const ParameterVector& theta0, const SensitivityResult& s);

}  // namespace opcal

#endif
