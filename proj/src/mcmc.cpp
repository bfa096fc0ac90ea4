// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#include "opcal/mcmc.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace opcal {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Proposal machinery for one metric: factors M = V diag(l) V^T once.
struct MetricOps {
    Eigen::MatrixXd m;
    Eigen::MatrixXd inv;
    Eigen::MatrixXd inv_sqrt;
    double half_log_det = 0.0;

    explicit MetricOps(const Eigen::MatrixXd& metric) : m(metric) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(metric);
        const Eigen::VectorXd& l = es.eigenvalues();
        inv = es.eigenvectors() * l.cwiseInverse().asDiagonal() *
              es.eigenvectors().transpose();
        inv_sqrt = es.eigenvectors() * l.cwiseSqrt().cwiseInverse().asDiagonal() *
                   es.eigenvectors().transpose();
        half_log_det = 0.5 * l.array().log().sum();
    }

    Eigen::VectorXd propose_mean(const Eigen::VectorXd& theta, const Eigen::VectorXd& grad,
                                 double eps) const {
        return theta + 0.5 * eps * eps * (inv * grad);
    }

    double log_density(const Eigen::VectorXd& value, const Eigen::VectorXd& mean,
                       double eps) const {
        const Eigen::VectorXd d = value - mean;
        return -0.5 * d.dot(m * d) / (eps * eps) + half_log_det;
    }
};

}  // namespace

Eigen::MatrixXd regularize_metric(const Eigen::MatrixXd& h, double floor_rel) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    Eigen::VectorXd l = es.eigenvalues();
    const double lmax = l.maxCoeff();
    if (!(lmax > 0.0))
        throw NumericalError("regularize_metric: metric not positive definite after "
                             "regularization (largest eigenvalue " +
                             std::to_string(lmax) + ")");
    const double floor = floor_rel * lmax;
    for (Eigen::Index i = 0; i < l.size(); ++i) l[i] = std::max(l[i], floor);
    return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::VectorXd Chain::mean() const { return states.colwise().mean(); }

Eigen::VectorXd Chain::variance() const {
    const Eigen::VectorXd mu = mean();
    return (states.rowwise() - mu.transpose()).array().square().colwise().sum() /
           std::max(1, length() - 1);
}

double Chain::quantile(int column, double p) const {
    std::vector<double> v(states.col(column).data(),
                          states.col(column).data() + states.rows());
    std::sort(v.begin(), v.end());
    const double pos = p * (v.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= v.size()) return v.back();
    const double frac = pos - static_cast<double>(i);
    return v[i] * (1.0 - frac) + v[i + 1] * frac;
}

std::pair<double, double> Chain::central_interval(int column, double alpha) const {
    return {quantile(column, alpha / 2.0), quantile(column, 1.0 - alpha / 2.0)};
}

Eigen::VectorXi Chain::histogram(int column, int n_bins, double lo, double hi) const {
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(n_bins);
    for (int i = 0; i < length(); ++i) {
        const double v = states(i, column);
        int b = static_cast<int>((v - lo) / (hi - lo) * n_bins);
        b = std::clamp(b, 0, n_bins - 1);
        ++counts[b];
    }
    return counts;
}

Chain mmala_sample(const TargetDensity& target, const Eigen::VectorXd& theta0,
                   const Eigen::MatrixXd& fixed_metric, const ChainOptions& options) {
    require(options.n_steps > 0 && options.burn_in >= 0 && options.thin >= 1,
            "mmala_sample: bad chain options");
    require(options.step_size > 0.0, "mmala_sample: step size must be positive");

    const int dim = static_cast<int>(theta0.size());
    const double eps = options.step_size;
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto metric_at = [&](const Eigen::VectorXd& theta) {
        return MetricOps(regularize_metric(target.metric_hessian(theta),
                                           options.metric_floor_rel));
    };

    MetricOps metric(fixed_metric);
    if (options.position_dependent_metric)
        require(static_cast<bool>(target.metric_hessian),
                "mmala_sample: position-dependent metric needs metric_hessian");

    Eigen::VectorXd theta = theta0;
    double logp = target.log_density(theta);
    require(std::isfinite(logp), "mmala_sample: theta0 outside the target support");
    Eigen::VectorXd grad = target.gradient(theta);
    MetricOps local = options.position_dependent_metric ? metric_at(theta) : metric;

    const int kept_count = (options.n_steps - options.burn_in + options.thin - 1) /
                           options.thin;
    require(kept_count > 0, "mmala_sample: burn-in swallows the whole chain");

    Chain chain;
    chain.states.resize(kept_count, dim);
    chain.log_posterior.resize(kept_count);
    chain.seed = options.seed;

    long accepted = 0;
    int kept = 0;
    Eigen::VectorXd xi(dim);
    for (int step = 0; step < options.n_steps; ++step) {
        const Eigen::VectorXd mean_fwd = local.propose_mean(theta, grad, eps);
        for (int i = 0; i < dim; ++i) xi[i] = normal(rng);
        const Eigen::VectorXd proposal = mean_fwd + eps * (local.inv_sqrt * xi);

        const double logp_prop = target.log_density(proposal);
        bool accept = false;
        if (logp_prop > kNegInf) {
            const Eigen::VectorXd grad_prop = target.gradient(proposal);
            const MetricOps& local_prop =
                options.position_dependent_metric ? metric_at(proposal) : local;
            const double log_q_fwd = local.log_density(proposal, mean_fwd, eps);
            const double log_q_rev = local_prop.log_density(
                theta, local_prop.propose_mean(proposal, grad_prop, eps), eps);
            const double log_alpha = logp_prop - logp + log_q_rev - log_q_fwd;
            if (std::log(unit(rng)) < log_alpha) {
                accept = true;
                theta = proposal;
                logp = logp_prop;
                grad = grad_prop;
                if (options.position_dependent_metric) local = local_prop;
            }
        }
        if (accept) ++accepted;

        if (step >= options.burn_in && (step - options.burn_in) % options.thin == 0) {
            chain.states.row(kept) = theta.transpose();
            chain.log_posterior[kept] = logp;
            ++kept;
        }
    }
    chain.states.conservativeResize(kept, dim);
    chain.log_posterior.conservativeResize(kept);
    chain.acceptance_rate = static_cast<double>(accepted) / options.n_steps;
    return chain;
}

Chain mcmc_sample(const CalibrationProblem& problem, const ParameterVector& theta_map,
                  const ParameterBounds& prior_bounds, const ChainOptions& options) {
    const double sigma = problem.observations().noise_sigma;
    require(sigma > 0.0, "mcmc_sample: needs a Gaussian noise model (sigma > 0)");
    require(prior_bounds.contains(theta_map, 1e-12),
            "mcmc_sample: theta_map outside the prior support");

    const ActiveSubproblem reduced(problem, theta_map);
    const std::vector<int>& idx = reduced.indices();
    const double inv_s2 = 1.0 / (sigma * sigma);

    Eigen::VectorXd lo(idx.size()), hi(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        lo[i] = prior_bounds.lower(theta_map.grid, idx[i]);
        hi[i] = prior_bounds.upper(theta_map.grid, idx[i]);
    }

    TargetDensity target;
    target.log_density = [&reduced, lo, hi, inv_s2](const Eigen::VectorXd& v) {
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (v[i] < lo[i] || v[i] > hi[i]) return kNegInf;
        return -reduced.misfit(v) * inv_s2;
    };
    target.gradient = [&reduced, inv_s2](const Eigen::VectorXd& v) {
        auto [value, grad] = reduced.value_and_gradient(v);
        (void)value;
        return Eigen::VectorXd(-grad * inv_s2);
    };
    target.metric_hessian = [&problem, &reduced, idx, inv_s2](const Eigen::VectorXd& v) {
        const Eigen::MatrixXd h =
            problem.evaluate(reduced.embed(v), false).full_hessian();
        Eigen::MatrixXd hs(idx.size(), idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b)
                hs(a, b) = h(idx[a], idx[b]) * inv_s2;
        return hs;
    };

    const Eigen::VectorXd start = theta_map.active_values();
    const Eigen::MatrixXd metric =
        regularize_metric(target.metric_hessian(start), options.metric_floor_rel);

    Chain chain = mmala_sample(target, start, metric, options);
    chain.parameter_indices = idx;
    return chain;
}

}  // namespace opcal
