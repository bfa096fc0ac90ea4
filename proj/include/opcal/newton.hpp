// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#ifndef OPCAL_NEWTON_HPP
#define OPCAL_NEWTON_HPP

#include <string>
#include <vector>

#include "opcal/misfit.hpp"

namespace opcal {

struct NewtonOptions {
    int max_iterations = 100;
    double gradient_tol = 1e-8;   // infinity norm over the free (non-binding) set
    double step_tol = 1e-12;
    bool gauss_newton_only = false;
    double armijo_c = 1e-4;
    int max_line_search = 40;
};

struct NewtonIterate {
    int iteration;
    double objective;
    double gradient_norm;
    double step_norm;
};

struct NewtonReport {
    ParameterVector solution;
    double objective = 0.0;
    std::string termination;  // gradient | step | max_iterations | line_search
    bool converged = false;
    std::vector<NewtonIterate> trace;
    int hessian_fallbacks = 0;  // steps that fell back to the Gauss-Newton matrix
};

/// Projected Newton with backtracking line search on J over the rescaled
/// box. Under the uniform box prior the MAP objective is J/sigma^2 plus a
/// constant, which shares its minimizers with J, so the same routine serves
/// the deterministic fit and the MAP seed. Inactive parameters stay frozen;
/// bound-binding coordinates are dropped from each Newton system. An
/// indefinite Hessian falls back to the Gauss-Newton matrix for that step.
NewtonReport newton_map(const CalibrationProblem& problem, const ParameterVector& theta0,
                        const ParameterBounds& bounds, const NewtonOptions& options = {});

}  // namespace opcal

#endif
