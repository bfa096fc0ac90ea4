// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#ifndef OPCAL_INITIAL_CONDITION_HPP
#define OPCAL_INITIAL_CONDITION_HPP

#include <Eigen/Core>

#include "opcal/spectral_field.hpp"
#include "opcal/wave_grid.hpp"

namespace opcal {

/// Initial concentration profile. Three flavors: a Gaussian bump
/// exp(-(x-x0)^2/l^2), a single retained Fourier mode (cosine or sine
/// phase), or explicit samples on a grid.
class InitialCondition {
  public:
    enum class Kind { gaussian_bump, single_mode, sampled };

    static InitialCondition gaussian_bump(double center, double width);
    static InitialCondition single_mode(int mode, bool sine = false);
    static InitialCondition sampled(Eigen::VectorXd values);

    Kind kind() const { return kind_; }
    double center() const { return center_; }
    double width() const { return width_; }
    int mode() const { return mode_; }
    bool sine() const { return sine_; }

    /// Values at arbitrary positions in a periodic domain of the given
    /// length. The sampled kind requires x.size() == stored size and assumes
    /// the same sample layout.
    Eigen::VectorXd sample_at(const Eigen::VectorXd& x, double domain_length) const;

    /// Values on the grid's sample points.
    Eigen::VectorXd sample(const WaveGrid& grid) const;

    /// Fourier coefficients of the profile on the grid.
    SpectralField coefficients(const WaveGrid& grid) const;

  private:
    InitialCondition() = default;
    Kind kind_ = Kind::gaussian_bump;
    double center_ = 0.0;
    double width_ = 1.0;
    int mode_ = 1;
    bool sine_ = false;
    Eigen::VectorXd values_;
};

}  // namespace opcal

#endif
