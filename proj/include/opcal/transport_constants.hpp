// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#ifndef OPCAL_TRANSPORT_CONSTANTS_HPP
#define OPCAL_TRANSPORT_CONSTANTS_HPP

#include "opcal/errors.hpp"

namespace opcal {

/// Physical constants of the 1D transport model.
struct TransportConstants {
    double mean_velocity = 1.0;    // u-bar
    double diffusivity = 1.0;      // nu >= 0
    double fractional_order = 2.0; // alpha in [1,2]; only the fractional model reads it

    void validate() const {
        require(diffusivity >= 0.0, "TransportConstants: diffusivity must be >= 0");
        require(fractional_order >= 1.0 && fractional_order <= 2.0,
                "TransportConstants: fractional_order must lie in [1, 2]");
    }
};

}  // namespace opcal

#endif
