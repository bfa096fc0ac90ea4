// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#ifndef OPCAL_DERIVATIVE_CHECK_HPP
#define OPCAL_DERIVATIVE_CHECK_HPP

#include "opcal/misfit.hpp"

namespace opcal {

/// Verification harness: analytic gradient and Hessian of J against central
/// finite differences of J itself, in rescaled coordinates.
struct DerivativeCheckReport {
    double gradient_max_rel_error = 0.0;
    double hessian_max_rel_error = 0.0;
    double gradient_step = 0.0;
    double hessian_step = 0.0;
    bool gradient_pass = false;  // tolerance 1e-5
    bool hessian_pass = false;   // tolerance 1e-4

    bool pass() const { return gradient_pass && hessian_pass; }
};

DerivativeCheckReport check_derivatives(const CalibrationProblem& problem,
                                        const ParameterVector& theta,
                                        double h_gradient = 1e-6, double h_hessian = 1e-3);

/// Central-difference gradient of J (test oracle; also used by the report).
Eigen::VectorXd fd_gradient(const CalibrationProblem& problem, const ParameterVector& theta,
                            double h);

/// Second-order central differences of J for the full Hessian.
Eigen::MatrixXd fd_hessian(const CalibrationProblem& problem, const ParameterVector& theta,
                           double h);

/// max_ij |a - b| / max(scale) with a relative floor; the comparison metric
/// used by the report and the acceptance suite.
double max_relative_difference(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace opcal

#endif
