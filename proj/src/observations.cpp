// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#include "opcal/observations.hpp"

#include <cmath>
#include <random>

namespace opcal {

ObservationSet::ObservationSet(Eigen::VectorXd xs, Eigen::VectorXd ts,
                               Eigen::VectorXd ds, double sigma)
    : x(std::move(xs)), t(std::move(ts)), values(std::move(ds)), noise_sigma(sigma) {
    require(x.size() == t.size() && x.size() == values.size(),
            "ObservationSet: x, t, values must have equal length");
    require(x.size() > 0, "ObservationSet: empty");
    require(sigma >= 0.0, "ObservationSet: noise sigma must be >= 0");
    for (Eigen::Index i = 0; i < x.size(); ++i)
        for (Eigen::Index j = i + 1; j < x.size(); ++j)
            require(x[i] != x[j] || t[i] != t[j],
                    "ObservationSet: duplicate observation point");
}

ObservationSet spatial_plan(double domain_length, int n, double time) {
    require(n > 0 && domain_length > 0.0, "spatial_plan: bad arguments");
    Eigen::VectorXd xs(n), ts = Eigen::VectorXd::Constant(n, time);
    for (int i = 0; i < n; ++i) xs[i] = domain_length * i / n;
    return ObservationSet(std::move(xs), std::move(ts), Eigen::VectorXd::Zero(n));
}

ObservationSet time_series_plan(double position, double t0, double t1, int n,
                                bool log_spacing) {
    require(n > 1 && t1 > t0, "time_series_plan: bad arguments");
    if (log_spacing) require(t0 > 0.0, "time_series_plan: log spacing needs t0 > 0");
    Eigen::VectorXd ts(n), xs = Eigen::VectorXd::Constant(n, position);
    for (int i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / (n - 1);
        ts[i] = log_spacing ? t0 * std::pow(t1 / t0, f) : t0 + f * (t1 - t0);
    }
    return ObservationSet(std::move(xs), std::move(ts), Eigen::VectorXd::Zero(n));
}

ObservationSet with_values(const ObservationSet& plan, const Eigen::VectorXd& values,
                           double sigma) {
    return ObservationSet(plan.x, plan.t, values, sigma);
}

Eigen::VectorXd add_gaussian_noise(const Eigen::VectorXd& clean, double sigma,
                                   std::uint64_t seed) {
    require(sigma >= 0.0, "add_gaussian_noise: sigma must be >= 0");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::VectorXd noisy = clean;
    for (Eigen::Index i = 0; i < noisy.size(); ++i) noisy[i] += sigma * nd(rng);
    return noisy;
}

}  // namespace opcal
