// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#include "opcal/misfit.hpp"

#include <cmath>
#include <complex>

namespace opcal {

namespace {

// Rescaled-coordinate column scales: dr_k for radii, pi for arguments.
Eigen::VectorXd coordinate_scales(const WaveGrid& grid) {
    const int nk = grid.n_modes;
    Eigen::VectorXd s(2 * nk);
    for (int k = 1; k <= nk; ++k) {
        s[k - 1] = radius_scale(grid, k);
        s[nk + k - 1] = std::numbers::pi;
    }
    return s;
}

}  // namespace

Eigen::MatrixXd MisfitEvaluation::full_hessian() const {
    const Eigen::Index m = h_rr.rows();
    Eigen::MatrixXd h(2 * m, 2 * m);
    h.topLeftCorner(m, m) = h_rr;
    h.topRightCorner(m, m) = h_rtheta;
    h.bottomLeftCorner(m, m) = h_rtheta.transpose();
    h.bottomRightCorner(m, m) = h_thetatheta;
    return h;
}

CalibrationProblem::CalibrationProblem(const WaveGrid& grid, const InitialCondition& ic,
                                       const TransportConstants& constants,
                                       const ObservationSet& obs)
    : grid_(grid), ic_(ic), constants_(constants), obs_(obs) {
    constants_.validate();
    SpectralField f = ic_.coefficients(grid_);
    const int nk = grid_.n_modes;
    c0_.resize(nk + 1);
    for (int k = 0; k <= nk; ++k) c0_[k] = f.coefficient(k);

    const int n = obs_.size();
    carrier_.resize(n, nk);
    for (int j = 0; j < n; ++j) {
        for (int k = 1; k <= nk; ++k) {
            const double w = grid_.wavenumber(k);
            const double phase = w * obs_.x[j] - constants_.mean_velocity * w * obs_.t[j];
            carrier_(j, k - 1) = c0_[k] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
}

Eigen::VectorXd CalibrationProblem::predict(const ParameterVector& theta) const {
    require(theta.grid == grid_, "CalibrationProblem: parameter grid mismatch");
    const OperatorSpectrum spectrum = theta.spectrum();
    const Eigen::VectorXcd mu = spectrum.eigenvalues();
    const int n = obs_.size();
    const int nk = grid_.n_modes;
    Eigen::VectorXd c = Eigen::VectorXd::Constant(n, c0_[0].real());
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int k = 0; k < nk; ++k)
            acc += 2.0 * (carrier_(j, k) * std::exp(mu[k] * obs_.t[j])).real();
        c[j] += acc;
    }
    return c;
}

double CalibrationProblem::misfit(const ParameterVector& theta) const {
    const Eigen::VectorXd res = predict(theta) - obs_.values;
    return 0.5 * res.squaredNorm();
}

Eigen::MatrixXd CalibrationProblem::jacobian(const ParameterVector& theta,
                                             Coordinates coords) const {
    require(theta.grid == grid_, "CalibrationProblem: parameter grid mismatch");
    const OperatorSpectrum spectrum = theta.spectrum();
    const Eigen::VectorXcd mu = spectrum.eigenvalues();
    const int n = obs_.size();
    const int nk = grid_.n_modes;

    Eigen::MatrixXd jac(n, 2 * nk);
    for (int j = 0; j < n; ++j) {
        const double t = obs_.t[j];
        for (int k = 0; k < nk; ++k) {
            const std::complex<double> e = carrier_(j, k) * std::exp(mu[k] * t);
            const std::complex<double> ei_theta =
                std::polar(1.0, spectrum.arguments[k]);
            jac(j, k) = 2.0 * (ei_theta * t * e).real();
            jac(j, nk + k) = 2.0 * (std::complex<double>(0.0, t) * mu[k] * e).real();
        }
    }
    if (coords == Coordinates::rescaled) {
        const Eigen::VectorXd s = coordinate_scales(grid_);
        jac.array().rowwise() *= s.transpose().array();
    }
    return jac;
}

std::pair<double, Eigen::VectorXd> CalibrationProblem::value_and_gradient(
    const ParameterVector& theta, Coordinates coords) const {
    const Eigen::VectorXd res = predict(theta) - obs_.values;
    Eigen::VectorXd grad = jacobian(theta, coords).transpose() * res;
    return {0.5 * res.squaredNorm(), std::move(grad)};
}

MisfitEvaluation CalibrationProblem::evaluate(const ParameterVector& theta,
                                              bool gauss_newton_only,
                                              Coordinates coords) const {
    require(theta.grid == grid_, "CalibrationProblem: parameter grid mismatch");
    const OperatorSpectrum spectrum = theta.spectrum();
    const Eigen::VectorXcd mu = spectrum.eigenvalues();
    const int n = obs_.size();
    const int nk = grid_.n_modes;

    Eigen::VectorXd c = Eigen::VectorXd::Constant(n, c0_[0].real());
    Eigen::MatrixXd jr(n, nk), jt(n, nk);
    // residual-weighted second derivatives accumulate on the diagonal
    Eigen::VectorXd d_rr = Eigen::VectorXd::Zero(nk);
    Eigen::VectorXd d_tt = Eigen::VectorXd::Zero(nk);
    Eigen::VectorXd d_tr = Eigen::VectorXd::Zero(nk);

    Eigen::MatrixXcd e_cache(n, nk);
    for (int j = 0; j < n; ++j) {
        const double t = obs_.t[j];
        double acc = 0.0;
        for (int k = 0; k < nk; ++k) {
            const std::complex<double> e = carrier_(j, k) * std::exp(mu[k] * t);
            e_cache(j, k) = e;
            acc += 2.0 * e.real();
            const std::complex<double> ei_theta =
                std::polar(1.0, spectrum.arguments[k]);
            jr(j, k) = 2.0 * (ei_theta * t * e).real();
            jt(j, k) = 2.0 * (std::complex<double>(0.0, t) * mu[k] * e).real();
        }
        c[j] += acc;
    }

    const Eigen::VectorXd res = c - obs_.values;

    if (!gauss_newton_only) {
        for (int j = 0; j < n; ++j) {
            const double t = obs_.t[j];
            for (int k = 0; k < nk; ++k) {
                const std::complex<double> e = e_cache(j, k);
                const std::complex<double> ei_theta =
                    std::polar(1.0, spectrum.arguments[k]);
                const std::complex<double> tmu = t * mu[k];
                const std::complex<double> it(0.0, t);
                d_rr[k] += res[j] * 2.0 * ((ei_theta * t) * (ei_theta * t) * e).real();
                d_tt[k] += res[j] * 2.0 * (-tmu * (1.0 + tmu) * e).real();
                d_tr[k] += res[j] * 2.0 * (it * ei_theta * (1.0 + tmu) * e).real();
            }
        }
    }

    MisfitEvaluation out;
    out.value = 0.5 * res.squaredNorm();
    out.gauss_newton_only = gauss_newton_only;
    out.coordinates = coords;

    Eigen::MatrixXd h_rr = jr.transpose() * jr;
    Eigen::MatrixXd h_rt = jr.transpose() * jt;
    Eigen::MatrixXd h_tt = jt.transpose() * jt;
    if (!gauss_newton_only) {
        h_rr += d_rr.asDiagonal();
        h_tt += d_tt.asDiagonal();
        h_rt += d_tr.asDiagonal();
    }

    Eigen::VectorXd grad(2 * nk);
    grad.head(nk) = jr.transpose() * res;
    grad.tail(nk) = jt.transpose() * res;

    if (coords == Coordinates::rescaled) {
        const Eigen::VectorXd s = coordinate_scales(grid_);
        const auto sr = s.head(nk);
        const auto st = s.tail(nk);
        grad.array() *= s.array();
        h_rr = sr.asDiagonal() * h_rr * sr.asDiagonal();
        h_rt = sr.asDiagonal() * h_rt * st.asDiagonal();
        h_tt = st.asDiagonal() * h_tt * st.asDiagonal();
    }

    out.gradient = std::move(grad);
    out.h_rr = std::move(h_rr);
    out.h_rtheta = std::move(h_rt);
    out.h_thetatheta = std::move(h_tt);
    return out;
}

ActiveSubproblem::ActiveSubproblem(const CalibrationProblem& problem,
                                   const ParameterVector& base)
    : problem_(problem), base_(base) {
    const int nk = base_.grid.n_modes;
    idx_ = base_.active_indices();
    require(!idx_.empty(), "ActiveSubproblem: no active parameters");
    for (int k = 1; k <= nk; ++k) {
        require(base_.active[k - 1] == base_.active[nk + k - 1],
                "ActiveSubproblem: both coordinates of a mode must share activity");
        if (base_.active[k - 1]) modes_.push_back(k);
    }

    const int n = problem_.observations().size();
    const int m = static_cast<int>(modes_.size());
    carrier_active_.resize(n, m);
    for (int a = 0; a < m; ++a)
        carrier_active_.col(a) = problem_.carriers().col(modes_[a] - 1);

    // frozen-mode + DC contribution, fixed across evaluations
    const Eigen::VectorXd full = problem_.predict(base_);
    const OperatorSpectrum base_spec = base_.spectrum();
    Eigen::VectorXd active_part = Eigen::VectorXd::Zero(n);
    for (int a = 0; a < m; ++a) {
        const std::complex<double> mu = base_spec.eigenvalue(modes_[a]);
        for (int j = 0; j < n; ++j)
            active_part[j] += 2.0 * (carrier_active_(j, a) *
                                     std::exp(mu * problem_.observations().t[j]))
                                        .real();
    }
    baseline_ = full - active_part;

    scale_r_.resize(m);
    offset_r_.resize(m);
    for (int a = 0; a < m; ++a) {
        scale_r_[a] = radius_scale(base_.grid, modes_[a]);
        offset_r_[a] = radius_offset(base_.grid, modes_[a]);
    }
}

ParameterVector ActiveSubproblem::embed(const Eigen::VectorXd& active_values) const {
    require(active_values.size() == dimension(), "ActiveSubproblem: size mismatch");
    ParameterVector full = base_;
    for (std::size_t i = 0; i < idx_.size(); ++i) full.values[idx_[i]] = active_values[i];
    return full;
}

Eigen::VectorXd ActiveSubproblem::predict(const Eigen::VectorXd& active_values) const {
    require(active_values.size() == dimension(), "ActiveSubproblem: size mismatch");
    const int m = static_cast<int>(modes_.size());
    const auto& obs = problem_.observations();
    Eigen::VectorXd c = baseline_;
    for (int a = 0; a < m; ++a) {
        const double r = offset_r_[a] + active_values[a] * scale_r_[a];
        const double theta =
            std::numbers::pi * (0.5 + active_values[m + a]);
        const std::complex<double> mu = std::polar(r, theta);
        for (int j = 0; j < obs.size(); ++j)
            c[j] += 2.0 * (carrier_active_(j, a) * std::exp(mu * obs.t[j])).real();
    }
    return c;
}

double ActiveSubproblem::misfit(const Eigen::VectorXd& active_values) const {
    const Eigen::VectorXd res = predict(active_values) - problem_.observations().values;
    return 0.5 * res.squaredNorm();
}

std::pair<double, Eigen::VectorXd> ActiveSubproblem::value_and_gradient(
    const Eigen::VectorXd& active_values) const {
    require(active_values.size() == dimension(), "ActiveSubproblem: size mismatch");
    const int m = static_cast<int>(modes_.size());
    const auto& obs = problem_.observations();
    const int n = obs.size();

    Eigen::VectorXd c = baseline_;
    Eigen::MatrixXcd e(n, m);
    Eigen::VectorXd thetas(m);
    for (int a = 0; a < m; ++a) {
        const double r = offset_r_[a] + active_values[a] * scale_r_[a];
        const double theta = std::numbers::pi * (0.5 + active_values[m + a]);
        thetas[a] = theta;
        const std::complex<double> mu = std::polar(r, theta);
        for (int j = 0; j < n; ++j) {
            e(j, a) = carrier_active_(j, a) * std::exp(mu * obs.t[j]);
            c[j] += 2.0 * e(j, a).real();
        }
    }
    const Eigen::VectorXd res = c - obs.values;

    Eigen::VectorXd grad = Eigen::VectorXd::Zero(2 * m);
    for (int a = 0; a < m; ++a) {
        const std::complex<double> ei_theta = std::polar(1.0, thetas[a]);
        const double r = offset_r_[a] + active_values[a] * scale_r_[a];
        const std::complex<double> mu = std::polar(r, thetas[a]);
        double gr = 0.0, gt = 0.0;
        for (int j = 0; j < n; ++j) {
            const double t = obs.t[j];
            gr += res[j] * 2.0 * (ei_theta * t * e(j, a)).real();
            gt += res[j] * 2.0 * (std::complex<double>(0.0, t) * mu * e(j, a)).real();
        }
        grad[a] = gr * scale_r_[a];
        grad[m + a] = gt * std::numbers::pi;
    }
    return {0.5 * res.squaredNorm(), std::move(grad)};
}

}  // namespace opcal
