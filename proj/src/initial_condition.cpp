// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#include "opcal/initial_condition.hpp"

#include <cmath>

namespace opcal {

InitialCondition InitialCondition::gaussian_bump(double center, double width) {
    require(width > 0.0, "InitialCondition: bump width must be positive");
    InitialCondition ic;
    ic.kind_ = Kind::gaussian_bump;
    ic.center_ = center;
    ic.width_ = width;
    return ic;
}

InitialCondition InitialCondition::single_mode(int mode, bool sine) {
    require(mode != 0, "InitialCondition: single_mode requires k != 0");
    InitialCondition ic;
    ic.kind_ = Kind::single_mode;
    ic.mode_ = mode;
    ic.sine_ = sine;
    return ic;
}

InitialCondition InitialCondition::sampled(Eigen::VectorXd values) {
    require(values.size() > 0, "InitialCondition: sampled values must be nonempty");
    InitialCondition ic;
    ic.kind_ = Kind::sampled;
    ic.values_ = std::move(values);
    return ic;
}

Eigen::VectorXd InitialCondition::sample_at(const Eigen::VectorXd& x,
                                            double domain_length) const {
    Eigen::VectorXd v(x.size());
    switch (kind_) {
        case Kind::gaussian_bump:
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                const double d = x[i] - center_;
                v[i] = std::exp(-d * d / (width_ * width_));
            }
            break;
        case Kind::single_mode: {
            const double w = 2.0 * std::numbers::pi * mode_ / domain_length;
            for (Eigen::Index i = 0; i < x.size(); ++i)
                v[i] = sine_ ? std::sin(w * x[i]) : std::cos(w * x[i]);
            break;
        }
        case Kind::sampled:
            require(x.size() == values_.size(),
                    "InitialCondition: sampled profile has a fixed sample count");
            v = values_;
            break;
    }
    return v;
}

Eigen::VectorXd InitialCondition::sample(const WaveGrid& grid) const {
    return sample_at(grid.points(), grid.domain_length);
}

SpectralField InitialCondition::coefficients(const WaveGrid& grid) const {
    if (kind_ == Kind::single_mode)
        require(std::abs(mode_) <= grid.n_modes,
                "InitialCondition: mode outside the retained band");
    return analyze(grid, sample(grid), 0.0);
}

}  // namespace opcal
