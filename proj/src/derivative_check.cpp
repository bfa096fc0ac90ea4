// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#include "opcal/derivative_check.hpp"

namespace opcal {

namespace {
ParameterVector shifted(const ParameterVector& theta, int i, double delta) {
    ParameterVector out = theta;
    out.values[i] += delta;
    return out;
}
}  // namespace

Eigen::VectorXd fd_gradient(const CalibrationProblem& problem, const ParameterVector& theta,
                            double h) {
    require(h > 0.0, "fd_gradient: step must be positive");
    Eigen::VectorXd g(theta.size());
    for (int i = 0; i < theta.size(); ++i) {
        const double jp = problem.misfit(shifted(theta, i, h));
        const double jm = problem.misfit(shifted(theta, i, -h));
        g[i] = (jp - jm) / (2.0 * h);
    }
    return g;
}

Eigen::MatrixXd fd_hessian(const CalibrationProblem& problem, const ParameterVector& theta,
                           double h) {
    require(h > 0.0, "fd_hessian: step must be positive");
    const int n = theta.size();
    const double j0 = problem.misfit(theta);
    Eigen::MatrixXd hess(n, n);
    for (int i = 0; i < n; ++i) {
        const double jp = problem.misfit(shifted(theta, i, h));
        const double jm = problem.misfit(shifted(theta, i, -h));
        hess(i, i) = (jp - 2.0 * j0 + jm) / (h * h);
        for (int l = i + 1; l < n; ++l) {
            const double jpp = problem.misfit(shifted(shifted(theta, i, h), l, h));
            const double jpm = problem.misfit(shifted(shifted(theta, i, h), l, -h));
            const double jmp = problem.misfit(shifted(shifted(theta, i, -h), l, h));
            const double jmm = problem.misfit(shifted(shifted(theta, i, -h), l, -h));
            hess(i, l) = (jpp - jpm - jmp + jmm) / (4.0 * h * h);
            hess(l, i) = hess(i, l);
        }
    }
    return hess;
}

double max_relative_difference(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    if (scale == 0.0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff() / scale;
}

DerivativeCheckReport check_derivatives(const CalibrationProblem& problem,
                                        const ParameterVector& theta, double h_gradient,
                                        double h_hessian) {
    DerivativeCheckReport report;
    report.gradient_step = h_gradient;
    report.hessian_step = h_hessian;

    const MisfitEvaluation eval = problem.evaluate(theta, false, Coordinates::rescaled);
    report.gradient_max_rel_error = max_relative_difference(
        eval.gradient, fd_gradient(problem, theta, h_gradient));
    report.hessian_max_rel_error = max_relative_difference(
        eval.full_hessian(), fd_hessian(problem, theta, h_hessian));

    report.gradient_pass = report.gradient_max_rel_error < 1e-5;
    report.hessian_pass = report.hessian_max_rel_error < 1e-4;
    return report;
}

}  // namespace opcal
