// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#ifndef OPCAL_PARAMETERS_HPP
#define OPCAL_PARAMETERS_HPP

#include <Eigen/Core>
#include <vector>

#include "opcal/operator_spectrum.hpp"

namespace opcal {

/// Calibration parameter vector in rescaled coordinates,
/// [r*_1..r*_nk, theta*_1..theta*_nk], plus an activity mask. Inactive
/// entries stay frozen at their current values through optimization and
/// sampling; derivatives are still evaluated for them.
struct ParameterVector {
    WaveGrid grid;
    Eigen::VectorXd values;    // length 2 * n_modes
    std::vector<bool> active;  // per parameter

    ParameterVector(const WaveGrid& g, Eigen::VectorXd v);

    static ParameterVector from_spectrum(const OperatorSpectrum& spectrum);
    static ParameterVector constant(const WaveGrid& g, double r_star, double theta_star);

    OperatorSpectrum spectrum() const;

    int n_modes() const { return grid.n_modes; }
    int size() const { return static_cast<int>(values.size()); }

    double r_star(int k) const { return values[k - 1]; }
    double theta_star(int k) const { return values[grid.n_modes + k - 1]; }

    /// Marks modes 1..cutoff active (both coordinates of a mode together).
    void set_active_modes(int cutoff);
    void set_all_active();

    std::vector<int> active_indices() const;
    int n_active() const;

    /// Values gathered over the active set / scattered back.
    Eigen::VectorXd active_values() const;
    void set_active_values(const Eigen::VectorXd& reduced);
};

/// Box constraints in rescaled coordinates. theta* is structurally confined
/// to [0,1] (operator admissibility); the r* box is configurable, and is
/// tightened per mode so the radius stays positive.
struct ParameterBounds {
    double r_star_min = 0.0;
    double r_star_max = 1.0;

    double lower(const WaveGrid& grid, int index) const;
    double upper(const WaveGrid& grid, int index) const;

    bool contains(const ParameterVector& theta, double slack = 0.0) const;
    void clip(ParameterVector& theta) const;
};

}  // namespace opcal

#endif
