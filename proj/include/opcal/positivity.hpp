// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#ifndef OPCAL_POSITIVITY_HPP
#define OPCAL_POSITIVITY_HPP

#include <vector>

#include "opcal/initial_condition.hpp"
#include "opcal/operator_spectrum.hpp"
#include "opcal/propagate.hpp"

namespace opcal {

/// Positivity is not enforced anywhere in the parametrization; this
/// diagnostic reports how far an evolved field dips negative over a dense
/// space-time grid so calibrations can be judged against the physical
/// (nonnegative) reference.
struct PositivityDiagnostic {
    double min_value = 0.0;
    double peak_value = 0.0;
    double min_time = 0.0;  // time at which the minimum occurs
    std::vector<std::pair<double, double>> per_time;  // (t, min over x)

    double margin() const { return peak_value > 0.0 ? min_value / peak_value : 0.0; }
};

PositivityDiagnostic positivity_diagnostic(const InitialCondition& ic,
                                           const OperatorSpectrum& spectrum,
                                           const TransportConstants& constants,
                                           const std::vector<double>& times,
                                           int n_dense_points = 512);

}  // namespace opcal

#endif
