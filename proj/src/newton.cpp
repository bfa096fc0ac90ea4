// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#include "opcal/newton.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>

namespace opcal {

namespace {

// Coordinates allowed to move this iteration: active, and not pressing
// against a bound in the direction of decrease.
std::vector<int> free_set(const ParameterVector& theta, const ParameterBounds& bounds,
                          const Eigen::VectorXd& grad) {
    constexpr double kEdge = 1e-12;
    std::vector<int> free;
    for (int i = 0; i < theta.size(); ++i) {
        if (!theta.active[i]) continue;
        const double lo = bounds.lower(theta.grid, i);
        const double hi = bounds.upper(theta.grid, i);
        const bool at_lower = theta.values[i] <= lo + kEdge && grad[i] > 0.0;
        const bool at_upper = theta.values[i] >= hi - kEdge && grad[i] < 0.0;
        if (!at_lower && !at_upper) free.push_back(i);
    }
    return free;
}

Eigen::MatrixXd gather(const Eigen::MatrixXd& h, const std::vector<int>& idx) {
    Eigen::MatrixXd out(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) out(a, b) = h(idx[a], idx[b]);
    return out;
}

Eigen::VectorXd gather(const Eigen::VectorXd& v, const std::vector<int>& idx) {
    Eigen::VectorXd out(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) out[a] = v[idx[a]];
    return out;
}

}  // namespace

NewtonReport newton_map(const CalibrationProblem& problem, const ParameterVector& theta0,
                        const ParameterBounds& bounds, const NewtonOptions& options) {
    require(bounds.contains(theta0, 1e-9), "newton_map: theta0 violates the bounds");

    ParameterVector theta = theta0;
    bounds.clip(theta);

    NewtonReport report{theta, 0.0, "max_iterations", false, {}, 0};

    MisfitEvaluation eval = problem.evaluate(theta, options.gauss_newton_only);
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        const Eigen::MatrixXd hess = eval.full_hessian();
        const std::vector<int> free = free_set(theta, bounds, eval.gradient);

        const double gnorm =
            free.empty() ? 0.0 : gather(eval.gradient, free).cwiseAbs().maxCoeff();
        report.trace.push_back({iter, eval.value, gnorm, 0.0});
        if (gnorm < options.gradient_tol) {
            report.termination = "gradient";
            report.converged = true;
            break;
        }

        const Eigen::VectorXd g = gather(eval.gradient, free);
        Eigen::MatrixXd h = gather(hess, free);

        Eigen::VectorXd step;
        bool usable = false;
        {
            Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
            if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
                step = ldlt.solve(-g);
                usable = step.dot(g) < 0.0;
            }
        }
        if (!usable) {
            // Gauss-Newton fallback with a small Levenberg floor.
            ++report.hessian_fallbacks;
            const MisfitEvaluation gn = problem.evaluate(theta, true);
            h = gather(gn.full_hessian(), free);
            const double floor = std::max(1e-12, 1e-10 * h.diagonal().maxCoeff());
            h.diagonal().array() += floor;
            Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
            step = ldlt.solve(-g);
            if (step.dot(g) >= 0.0) step = -g;  // last resort: steepest descent
        }

        // Backtracking with projection onto the box.
        double alpha = 1.0;
        bool accepted = false;
        ParameterVector candidate = theta;
        for (int ls = 0; ls < options.max_line_search; ++ls) {
            candidate = theta;
            for (std::size_t a = 0; a < free.size(); ++a)
                candidate.values[free[a]] += alpha * step[a];
            bounds.clip(candidate);
            const Eigen::VectorXd move = candidate.values - theta.values;
            if (move.cwiseAbs().maxCoeff() == 0.0) break;
            const double predicted = eval.gradient.dot(move);
            const double j_new = problem.misfit(candidate);
            if (j_new <= eval.value + options.armijo_c * std::min(predicted, 0.0)) {
                report.trace.back().step_norm = move.norm();
                theta = candidate;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            report.termination = "line_search";
            break;
        }

        eval = problem.evaluate(theta, options.gauss_newton_only);
        if (report.trace.back().step_norm < options.step_tol) {
            report.termination = "step";
            report.converged = true;
            break;
        }
    }

    report.solution = theta;
    report.objective = problem.misfit(theta);
    return report;
}

}  // namespace opcal
