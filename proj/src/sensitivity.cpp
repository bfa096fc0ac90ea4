// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#include "opcal/sensitivity.hpp"

namespace opcal {

int cutoff_index(const Eigen::VectorXd& sensitivities, double gamma_tol) {
    const double max = sensitivities.maxCoeff();
    if (max <= 0.0) return 0;
    const double threshold = gamma_tol * max;
    int cut = 0;
    for (int k = 1; k <= sensitivities.size(); ++k)
        if (sensitivities[k - 1] >= threshold) cut = k;
    return cut;
}

SensitivityResult sensitivity_cutoff(const CalibrationProblem& problem,
                                     const ParameterVector& theta0, double gamma_tol) {
    require(gamma_tol > 0.0 && gamma_tol <= 1.0,
            "sensitivity_cutoff: gamma_tol must lie in (0, 1]");

    const MisfitEvaluation eval =
        problem.evaluate(theta0, /*gauss_newton_only=*/false, Coordinates::polar);

    SensitivityResult out;
    out.gamma_tol = gamma_tol;
    out.radius_sensitivity = eval.h_rr.diagonal();
    out.argument_sensitivity = eval.h_thetatheta.diagonal();

    const double rmax = out.radius_sensitivity.maxCoeff();
    const double tmax = out.argument_sensitivity.maxCoeff();
    if (rmax <= 0.0 && tmax <= 0.0)
        throw NumericalError("sensitivity_cutoff: all sensitivities vanish "
                             "(no informative data)");

    out.cutoff_radius = cutoff_index(out.radius_sensitivity, gamma_tol);
    out.cutoff_argument = cutoff_index(out.argument_sensitivity, gamma_tol);
    out.cutoff = std::max(out.cutoff_radius, out.cutoff_argument);
    return out;
}

ParameterVector apply_cutoff(const ParameterVector& theta0, const SensitivityResult& s) {
    ParameterVector reduced = theta0;
    reduced.set_active_modes(s.cutoff);
    return reduced;
}

}  // namespace opcal
