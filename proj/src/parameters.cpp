// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#include "opcal/parameters.hpp"

#include <algorithm>

namespace opcal {

ParameterVector::ParameterVector(const WaveGrid& g, Eigen::VectorXd v)
    : grid(g), values(std::move(v)), active(2 * g.n_modes, true) {
    require(values.size() == 2 * grid.n_modes,
            "ParameterVector: expected 2*n_modes entries");
}

ParameterVector ParameterVector::from_spectrum(const OperatorSpectrum& spectrum) {
    RescaledParameters p = rescale(spectrum);
    Eigen::VectorXd v(2 * spectrum.grid.n_modes);
    v << p.r_star, p.theta_star;
    return ParameterVector(spectrum.grid, std::move(v));
}

ParameterVector ParameterVector::constant(const WaveGrid& g, double r_star,
                                          double theta_star) {
    Eigen::VectorXd v(2 * g.n_modes);
    v.head(g.n_modes).setConstant(r_star);
    v.tail(g.n_modes).setConstant(theta_star);
    return ParameterVector(g, std::move(v));
}

OperatorSpectrum ParameterVector::spectrum() const {
    const int nk = grid.n_modes;
    return unrescale(RescaledParameters(grid, values.head(nk), values.tail(nk)));
}

void ParameterVector::set_active_modes(int cutoff) {
    require(cutoff >= 0 && cutoff <= grid.n_modes,
            "ParameterVector: cutoff outside [0, n_modes]");
    const int nk = grid.n_modes;
    for (int k = 1; k <= nk; ++k) {
        const bool on = k <= cutoff;
        active[k - 1] = on;
        active[nk + k - 1] = on;
    }
}

void ParameterVector::set_all_active() {
    std::fill(active.begin(), active.end(), true);
}

std::vector<int> ParameterVector::active_indices() const {
    std::vector<int> idx;
    for (int i = 0; i < size(); ++i)
        if (active[i]) idx.push_back(i);
    return idx;
}

int ParameterVector::n_active() const {
    return static_cast<int>(std::count(active.begin(), active.end(), true));
}

Eigen::VectorXd ParameterVector::active_values() const {
    const auto idx = active_indices();
    Eigen::VectorXd v(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) v[i] = values[idx[i]];
    return v;
}

void ParameterVector::set_active_values(const Eigen::VectorXd& reduced) {
    const auto idx = active_indices();
    require(reduced.size() == static_cast<Eigen::Index>(idx.size()),
            "ParameterVector: reduced vector has wrong length");
    for (std::size_t i = 0; i < idx.size(); ++i) values[idx[i]] = reduced[i];
}

double ParameterBounds::lower(const WaveGrid& grid, int index) const {
    const int nk = grid.n_modes;
    if (index >= nk) return 0.0;  // theta*
    const int k = index + 1;
    const double scale = radius_scale(grid, k);
    const double offset = radius_offset(grid, k);
    // keep r = offset + r* scale above a small positive floor
    const double floor_rstar = (1e-8 * offset - offset) / scale;
    return scale > 0.0 ? std::max(r_star_min, floor_rstar) : r_star_min;
}

double ParameterBounds::upper(const WaveGrid& grid, int index) const {
    const int nk = grid.n_modes;
    if (index >= nk) return 1.0;  // theta*
    const int k = index + 1;
    const double scale = radius_scale(grid, k);
    const double offset = radius_offset(grid, k);
    const double floor_rstar = (1e-8 * offset - offset) / scale;
    return scale > 0.0 ? r_star_max : std::min(r_star_max, floor_rstar);
}

bool ParameterBounds::contains(const ParameterVector& theta, double slack) const {
    for (int i = 0; i < theta.size(); ++i) {
        if (theta.values[i] < lower(theta.grid, i) - slack) return false;
        if (theta.values[i] > upper(theta.grid, i) + slack) return false;
    }
    return true;
}

void ParameterBounds::clip(ParameterVector& theta) const {
    for (int i = 0; i < theta.size(); ++i)
        theta.values[i] =
            std::clamp(theta.values[i], lower(theta.grid, i), upper(theta.grid, i));
}

}  // namespace opcal
