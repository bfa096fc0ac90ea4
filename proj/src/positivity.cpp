// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#include "opcal/positivity.hpp"

#include <limits>

namespace opcal {

PositivityDiagnostic positivity_diagnostic(const InitialCondition& ic,
                                           const OperatorSpectrum& spectrum,
                                           const TransportConstants& constants,
                                           const std::vector<double>& times,
                                           int n_dense_points) {
    require(!times.empty(), "positivity_diagnostic: no evaluation times");
    const WaveGrid& grid = spectrum.grid;
    SpectralField c0 = ic.coefficients(grid);

    Eigen::VectorXd x(n_dense_points);
    for (int i = 0; i < n_dense_points; ++i)
        x[i] = grid.domain_length * i / n_dense_points;

    PositivityDiagnostic diag;
    diag.min_value = std::numeric_limits<double>::infinity();
    diag.peak_value = -std::numeric_limits<double>::infinity();
    for (double t : times) {
        SpectralField ct = propagate_exact(c0, spectrum, constants, t);
        const Eigen::VectorXd values = synthesize_at(ct, x);
        const double lo = values.minCoeff();
        const double hi = values.maxCoeff();
        diag.per_time.emplace_back(t, lo);
        if (lo < diag.min_value) {
            diag.min_value = lo;
            diag.min_time = t;
        }
        diag.peak_value = std::max(diag.peak_value, hi);
    }
    return diag;
}

}  // namespace opcal
