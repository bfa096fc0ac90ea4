// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#ifndef OPCAL_WAVE_GRID_HPP
#define OPCAL_WAVE_GRID_HPP

#include <Eigen/Core>
#include <numbers>

#include "opcal/errors.hpp"

namespace opcal {

/// Periodic 1D domain with a truncated set of Fourier modes.
///
/// Retains wavenumbers w_k = 2*pi*k/L for k in [-n_modes, n_modes] and
/// n_points equispaced real-space samples x_i = i*L/n_points. The sample
/// count must resolve the retained band (n_points >= 2*n_modes + 1); with
/// equality the analyze/synthesize pair is a bijection.
struct WaveGrid {
    double domain_length;
    int n_modes;
    int n_points;

    WaveGrid(double length, int modes, int points)
        : domain_length(length), n_modes(modes), n_points(points) {
        require(length > 0.0, "WaveGrid: domain_length must be positive");
        require(modes >= 1, "WaveGrid: n_modes must be at least 1");
        require(points >= 2 * modes + 1,
                "WaveGrid: n_points must be at least 2*n_modes + 1");
    }

    double wavenumber(int k) const {
        return 2.0 * std::numbers::pi * static_cast<double>(k) / domain_length;
    }

    double point(int i) const {
        return static_cast<double>(i) * domain_length / static_cast<double>(n_points);
    }

    Eigen::VectorXd points() const {
        Eigen::VectorXd x(n_points);
        for (int i = 0; i < n_points; ++i) x[i] = point(i);
        return x;
    }

    int n_coefficients() const { return 2 * n_modes + 1; }

    bool operator==(const WaveGrid& other) const = default;
};

}  // namespace opcal

#endif
