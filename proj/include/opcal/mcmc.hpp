// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#ifndef OPCAL_MCMC_HPP
#define OPCAL_MCMC_HPP

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "opcal/misfit.hpp"

namespace opcal {

/// Target density for the sampler. log_density must return -infinity outside
/// the support; gradient is only evaluated at points inside it.
struct TargetDensity {
    std::function<double(const Eigen::VectorXd&)> log_density;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
    /// Local metric (negative log-density Hessian); only needed when the
    /// sampler runs with a position-dependent metric.
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> metric_hessian;
};

struct ChainOptions {
    int n_steps = 100000;
    int burn_in = 1000;
    int thin = 1;
    double step_size = 0.5;
    std::uint64_t seed = 1;
    bool position_dependent_metric = false;
    double metric_floor_rel = 1e-8;  // eigenvalue floor, relative to the largest
};

struct Chain {
    Eigen::MatrixXd states;  // kept states, one per row
    Eigen::VectorXd log_posterior;
    double acceptance_rate = 0.0;
    std::uint64_t seed = 0;
    std::vector<int> parameter_indices;  // full-vector indices of the sampled coords

    int dimension() const { return static_cast<int>(states.cols()); }
    int length() const { return static_cast<int>(states.rows()); }
    Eigen::VectorXd mean() const;
    Eigen::VectorXd variance() const;
    double quantile(int column, double p) const;
    /// Central (1 - alpha) credible interval of one coordinate.
    std::pair<double, double> central_interval(int column, double alpha = 0.05) const;
    Eigen::VectorXi histogram(int column, int n_bins, double lo, double hi) const;
};

/// Langevin proposals preconditioned by a metric, with the
/// Metropolis-Hastings correction for the metric-aware proposal density.
/// With the fixed metric (the default) this is the stochastic-Newton style
/// sampler: the metric is the regularized log-posterior Hessian at the MAP
/// point. The position-dependent option rebuilds the metric at every state
/// (simplified manifold scheme, no curvature drift terms).
Chain mmala_sample(const TargetDensity& target, const Eigen::VectorXd& theta0,
                   const Eigen::MatrixXd& fixed_metric, const ChainOptions& options);

/// Eigenvalue-floored positive-definite version of a symmetric matrix.
/// Throws (naming the offending eigenvalue) if even the largest one is
/// not positive.
Eigen::MatrixXd regularize_metric(const Eigen::MatrixXd& h, double floor_rel);

/// Posterior sampler for a calibration problem: Gaussian likelihood with
/// known sigma, uniform [0,1] priors on the rescaled coordinates (the r* box
/// may be widened via bounds), sampling only the active parameters of
/// theta_map with the metric frozen at theta_map.
Chain mcmc_sample(const CalibrationProblem& problem, const ParameterVector& theta_map,
                  const ParameterBounds& prior_bounds, const ChainOptions& options);

}  // namespace opcal

#endif
