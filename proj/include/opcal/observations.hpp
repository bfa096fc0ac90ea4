// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#ifndef OPCAL_OBSERVATIONS_HPP
#define OPCAL_OBSERVATIONS_HPP

#include <Eigen/Core>
#include <cstdint>

#include "opcal/errors.hpp"

namespace opcal {

/// Point observations (x_j, t_j, d_j) with an optional i.i.d. Gaussian noise
/// model. noise_sigma == 0 means a deterministic (noise-free) fit.
struct ObservationSet {
    Eigen::VectorXd x;
    Eigen::VectorXd t;
    Eigen::VectorXd values;
    double noise_sigma = 0.0;

    ObservationSet(Eigen::VectorXd xs, Eigen::VectorXd ts, Eigen::VectorXd ds,
                   double sigma = 0.0);

    int size() const { return static_cast<int>(x.size()); }
};

/// n equispaced positions across [0, L) at a common observation time.
/// Values are left zero; fill with predictions or data afterwards.
ObservationSet spatial_plan(double domain_length, int n, double time);

/// n sample times across [t0, t1] at a fixed position, uniform or
/// logarithmic spacing.
ObservationSet time_series_plan(double position, double t0, double t1, int n,
                                bool log_spacing = false);

ObservationSet with_values(const ObservationSet& plan, const Eigen::VectorXd& values,
                           double sigma = 0.0);

/// Adds N(0, sigma^2) noise; deterministic in the seed.
Eigen::VectorXd add_gaussian_noise(const Eigen::VectorXd& clean, double sigma,
                                   std::uint64_t seed);

}  // namespace opcal

#endif
