// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#include "opcal/spectral_field.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <vector>

namespace opcal {

SpectralField::SpectralField(const WaveGrid& g, Eigen::VectorXcd coeff, double t)
    : grid(g), coefficients(std::move(coeff)), time_stamp(t) {
    require(coefficients.size() == grid.n_coefficients(),
            "SpectralField: coefficient count does not match grid");
    require(t >= 0.0, "SpectralField: time_stamp must be nonnegative");
}

double SpectralField::conjugate_asymmetry() const {
    const int nk = grid.n_modes;
    double scale = coefficients.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (int k = 0; k <= nk; ++k) {
        const auto diff = coefficients[nk - k] - std::conj(coefficients[nk + k]);
        worst = std::max(worst, std::abs(diff));
    }
    return worst / scale;
}

SpectralField analyze(const WaveGrid& grid, const Eigen::VectorXd& values,
                      double time_stamp) {
    if (values.size() != grid.n_points)
        throw PreconditionError("analyze: expected " + std::to_string(grid.n_points) +
                                " samples, got " + std::to_string(values.size()));

    const int n = grid.n_points;
    std::vector<std::complex<double>> in(n), out(n);
    for (int i = 0; i < n; ++i) in[i] = values[i];
    Eigen::FFT<double> fft;
    fft.fwd(out, in);

    const int nk = grid.n_modes;
    Eigen::VectorXcd coeff(grid.n_coefficients());
    for (int k = -nk; k <= nk; ++k) {
        const int bin = (k >= 0) ? k : n + k;
        coeff[k + nk] = out[bin] / static_cast<double>(n);
    }
    // DFT of real input is Hermitian up to roundoff; make it exact so the
    // symmetry invariant holds bit-for-bit.
    for (int k = 1; k <= nk; ++k) {
        const auto avg = 0.5 * (coeff[nk + k] + std::conj(coeff[nk - k]));
        coeff[nk + k] = avg;
        coeff[nk - k] = std::conj(avg);
    }
    coeff[nk] = std::complex<double>(coeff[nk].real(), 0.0);
    return SpectralField(grid, std::move(coeff), time_stamp);
}

Eigen::VectorXd synthesize(const SpectralField& field) {
    if (field.conjugate_asymmetry() > 1e-10)
        throw PreconditionError("synthesize: coefficients break conjugate symmetry");

    const int n = field.grid.n_points;
    const int nk = field.grid.n_modes;
    std::vector<std::complex<double>> bins(n, {0.0, 0.0}), out(n);
    for (int k = -nk; k <= nk; ++k) {
        const int bin = (k >= 0) ? k : n + k;
        bins[bin] = field.coefficients[k + nk] * static_cast<double>(n);
    }
    Eigen::FFT<double> fft;
    fft.inv(out, bins);

    Eigen::VectorXd values(n);
    for (int i = 0; i < n; ++i) values[i] = out[i].real();
    return values;
}

Eigen::VectorXd synthesize_at(const SpectralField& field, const Eigen::VectorXd& x) {
    const int nk = field.grid.n_modes;
    Eigen::VectorXd values(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        double v = field.coefficient(0).real();
        for (int k = 1; k <= nk; ++k) {
            const double w = field.grid.wavenumber(k);
            const std::complex<double> phase(std::cos(w * x[j]), std::sin(w * x[j]));
            v += 2.0 * (field.coefficient(k) * phase).real();
        }
        values[j] = v;
    }
    return values;
}

}  // namespace opcal
