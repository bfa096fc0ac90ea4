// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#ifndef OPCAL_MISFIT_HPP
#define OPCAL_MISFIT_HPP

#include <Eigen/Core>

#include "opcal/initial_condition.hpp"
#include "opcal/observations.hpp"
#include "opcal/parameters.hpp"
#include "opcal/propagate.hpp"

namespace opcal {

/// Coordinate system for derivatives: polar (r_k, theta_k) or the rescaled
/// box coordinates (r*_k, theta*_k). The two are related by a fixed diagonal
/// scaling, so Jacobians/Hessians transform by column/row scaling.
enum class Coordinates { polar, rescaled };

/// J, its gradient, and the Hessian blocks at one parameter point. The full
/// Hessian is [[H_rr, H_rt], [H_rt^T, H_tt]]; with gauss_newton_only the
/// residual-weighted curvature term is dropped and the blocks are J^T J.
struct MisfitEvaluation {
    double value = 0.0;
    Eigen::VectorXd gradient;
    Eigen::MatrixXd h_rr;
    Eigen::MatrixXd h_rtheta;
    Eigen::MatrixXd h_thetatheta;
    bool gauss_newton_only = false;
    Coordinates coordinates = Coordinates::rescaled;

    Eigen::MatrixXd full_hessian() const;
};

/// Parameter-to-observable map for the 1D generalized transport model and
/// the squared-l2 data misfit J(theta) = 1/2 ||c(theta) - d||^2.
///
/// Observables are c(x_j, t_j) = sum_k c_k(0) exp([mu_k - i u w_k] t_j)
/// exp(i w_k x_j), so every derivative in (r_k, theta_k) has a closed form;
/// these are assembled here analytically. Evaluations are pure and safe to
/// run concurrently.
class CalibrationProblem {
  public:
    CalibrationProblem(const WaveGrid& grid, const InitialCondition& ic,
                       const TransportConstants& constants, const ObservationSet& obs);

    const WaveGrid& grid() const { return grid_; }
    const ObservationSet& observations() const { return obs_; }
    const TransportConstants& constants() const { return constants_; }
    const InitialCondition& initial_condition() const { return ic_; }
    int n_parameters() const { return 2 * grid_.n_modes; }

    /// Predicted observable vector (forward map sampled at the data points).
    Eigen::VectorXd predict(const ParameterVector& theta) const;

    double misfit(const ParameterVector& theta) const;

    /// n_obs x 2 n_modes matrix [dc/dr, dc/dtheta]; columns for inactive
    /// parameters are still computed (masking happens downstream).
    Eigen::MatrixXd jacobian(const ParameterVector& theta,
                             Coordinates coords = Coordinates::rescaled) const;

    /// Value, gradient, and Hessian blocks in one pass.
    MisfitEvaluation evaluate(const ParameterVector& theta, bool gauss_newton_only = false,
                              Coordinates coords = Coordinates::rescaled) const;

    /// J and gradient without assembling Hessian blocks (sampler hot path).
    std::pair<double, Eigen::VectorXd> value_and_gradient(
        const ParameterVector& theta, Coordinates coords = Coordinates::rescaled) const;

    /// Initial-condition coefficients c_k(0), k = 0..n_modes.
    const Eigen::VectorXcd& ic_coefficients() const { return c0_; }

    /// Parameter-free part c_k(0) e^{i w_k x_j} e^{-i u w_k t_j} (j x k).
    const Eigen::MatrixXcd& carriers() const { return carrier_; }

  private:
    WaveGrid grid_;
    InitialCondition ic_;
    TransportConstants constants_;
    ObservationSet obs_;
    Eigen::VectorXcd c0_;      // k = 0..n_modes
    Eigen::MatrixXcd carrier_; // see carriers()
};

/// Forward and gradient evaluations when only a small active subset of the
/// parameters moves: the contribution of the frozen modes is precomputed
/// once, so each evaluation costs O(n_obs * n_active). Active values are
/// ordered like ParameterVector::active_values(). Evaluations are pure.
class ActiveSubproblem {
  public:
    ActiveSubproblem(const CalibrationProblem& problem, const ParameterVector& base);

    const std::vector<int>& indices() const { return idx_; }
    int dimension() const { return static_cast<int>(idx_.size()); }

    ParameterVector embed(const Eigen::VectorXd& active_values) const;

    Eigen::VectorXd predict(const Eigen::VectorXd& active_values) const;
    double misfit(const Eigen::VectorXd& active_values) const;
    std::pair<double, Eigen::VectorXd> value_and_gradient(
        const Eigen::VectorXd& active_values) const;

  private:
    const CalibrationProblem& problem_;
    ParameterVector base_;
    std::vector<int> idx_;    // active parameter indices in the full layout
    std::vector<int> modes_;  // active mode numbers k
    Eigen::VectorXd baseline_;  // DC + frozen-mode contribution at the data points
    Eigen::MatrixXcd carrier_active_;  // carrier columns of the active modes
    Eigen::VectorXd scale_r_, offset_r_;  // rescaling map per active mode
};

}  // namespace opcal

#endif
