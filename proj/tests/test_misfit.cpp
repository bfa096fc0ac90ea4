#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "opcal/derivative_check.hpp"
#include "opcal/misfit.hpp"
#include "opcal/propagate.hpp"
#include "support/scenarios.hpp"

using namespace opcal;
using testing::FradeScenario;

namespace {
// Small instance so finite-difference Hessians stay cheap.
FradeScenario small_scenario() { return FradeScenario::standard(8); }
}  // namespace

TEST_CASE("forward_observe equals synthesize(propagate_exact) at the points") {
    FradeScenario sc = small_scenario();
    ObservationSet plan = spatial_plan(sc.grid.domain_length, 13, 0.4);
    CalibrationProblem problem(sc.grid, sc.ic, sc.constants, plan);

    ParameterVector theta = testing::random_interior_point(sc.grid, 3);
    Eigen::VectorXd via_map = problem.predict(theta);

    SpectralField evolved =
        propagate_exact(sc.ic.coefficients(sc.grid), theta.spectrum(), sc.constants, 0.4);
    Eigen::VectorXd via_field = synthesize_at(evolved, plan.x);
    CHECK((via_map - via_field).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("forward_observe at t = 0 returns the IC samples regardless of theta") {
    FradeScenario sc = small_scenario();
    ObservationSet plan = spatial_plan(sc.grid.domain_length, 9, 0.0);
    CalibrationProblem problem(sc.grid, sc.ic, sc.constants, plan);

    SpectralField c0 = sc.ic.coefficients(sc.grid);
    Eigen::VectorXd ic_values = synthesize_at(c0, plan.x);
    for (unsigned seed : {1u, 2u}) {
        ParameterVector theta = testing::random_interior_point(sc.grid, seed);
        CHECK((problem.predict(theta) - ic_values).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("forward_observe reduces to the analytic heat solution for Fickian theta") {
    WaveGrid grid(1.0, 8, 17);
    TransportConstants constants{0.0, 0.05, 2.0};
    InitialCondition ic = InitialCondition::single_mode(2);
    ObservationSet plan = spatial_plan(1.0, 11, 0.3);
    CalibrationProblem problem(grid, ic, constants, plan);

    ParameterVector theta = ParameterVector::from_spectrum(fickian_spectrum(0.05, grid));
    Eigen::VectorXd c = problem.predict(theta);
    const double w = grid.wavenumber(2);
    for (int j = 0; j < plan.size(); ++j) {
        const double expected = std::exp(-0.05 * w * w * 0.3) * std::cos(w * plan.x[j]);
        CHECK(c[j] == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("misfit value") {
    FradeScenario sc = small_scenario();
    ObservationSet plan = spatial_plan(sc.grid.domain_length, 7, 0.5);
    ObservationSet data = sc.observe(plan);
    CalibrationProblem problem(sc.grid, sc.ic, sc.constants, data);

    SUBCASE("zero at the truth") {
        CHECK(problem.misfit(ParameterVector::from_spectrum(sc.truth)) <
              1e-24);
    }

    SUBCASE("single observation with residual 2 gives J = 2") {
        ParameterVector theta = ParameterVector::from_spectrum(sc.truth);
        Eigen::VectorXd x(1), t(1), d(1);
        x << 1.0;
        t << 0.5;
        CalibrationProblem probe(sc.grid, sc.ic, sc.constants,
                                 ObservationSet(x, t, Eigen::VectorXd::Zero(1)));
        d << probe.predict(theta)[0] - 2.0;
        CalibrationProblem shifted(sc.grid, sc.ic, sc.constants, ObservationSet(x, t, d));
        CHECK(shifted.misfit(theta) == doctest::Approx(2.0).epsilon(1e-12));
    }

    SUBCASE("matches a direct recomputation from predictions") {
        ParameterVector theta = testing::random_interior_point(sc.grid, 5);
        const Eigen::VectorXd res = problem.predict(theta) - data.values;
        CHECK(problem.misfit(theta) ==
              doctest::Approx(0.5 * res.squaredNorm()).epsilon(1e-13));
    }
}

TEST_CASE("jacobian structure") {
    FradeScenario sc = small_scenario();

    SUBCASE("rows vanish at t = 0") {
        ObservationSet plan = spatial_plan(sc.grid.domain_length, 5, 0.0);
        CalibrationProblem problem(sc.grid, sc.ic, sc.constants, plan);
        Eigen::MatrixXd jac =
            problem.jacobian(testing::random_interior_point(sc.grid, 2));
        CHECK(jac.cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("columns vanish for modes absent from the IC") {
        WaveGrid grid(1.0, 6, 13);
        TransportConstants constants{1.0, 0.5, 2.0};
        InitialCondition ic = InitialCondition::single_mode(2);  // only k = 2 present
        ObservationSet plan = spatial_plan(1.0, 9, 0.3);
        CalibrationProblem problem(grid, ic, constants, plan);
        Eigen::MatrixXd jac = problem.jacobian(testing::random_interior_point(grid, 4));
        for (int k = 1; k <= 6; ++k) {
            if (k == 2) continue;
            CHECK(jac.col(k - 1).cwiseAbs().maxCoeff() < 1e-13);
            CHECK(jac.col(6 + k - 1).cwiseAbs().maxCoeff() < 1e-13);
        }
        CHECK(jac.col(1).cwiseAbs().maxCoeff() > 1e-6);
    }

    SUBCASE("matches central finite differences in rescaled coordinates") {
        FradeScenario sc8 = small_scenario();
        ObservationSet data = testing::random_observations(sc8, 15, 11);
        CalibrationProblem problem(sc8.grid, sc8.ic, sc8.constants, data);
        ParameterVector theta = testing::random_interior_point(sc8.grid, 12);

        Eigen::MatrixXd analytic = problem.jacobian(theta, Coordinates::rescaled);
        const double h = 1e-6;
        Eigen::MatrixXd fd(analytic.rows(), analytic.cols());
        for (int i = 0; i < theta.size(); ++i) {
            ParameterVector tp = theta, tm = theta;
            tp.values[i] += h;
            tm.values[i] -= h;
            fd.col(i) = (problem.predict(tp) - problem.predict(tm)) / (2.0 * h);
        }
        CHECK(max_relative_difference(analytic, fd) < 1e-5);
    }
}

TEST_CASE("hessian blocks") {
    FradeScenario sc = small_scenario();
    ObservationSet data = testing::random_observations(sc, 15, 21);
    CalibrationProblem problem(sc.grid, sc.ic, sc.constants, data);
    ParameterVector theta = testing::random_interior_point(sc.grid, 22);

    SUBCASE("zero residual leaves only the Gauss-Newton part") {
        ObservationSet plan = spatial_plan(sc.grid.domain_length, 15, 0.4);
        CalibrationProblem clean(sc.grid, sc.ic, sc.constants, plan);
        ObservationSet fit = with_values(plan, clean.predict(theta));
        CalibrationProblem exact(sc.grid, sc.ic, sc.constants, fit);
        MisfitEvaluation full = exact.evaluate(theta, false);
        MisfitEvaluation gn = exact.evaluate(theta, true);
        CHECK(max_relative_difference(full.full_hessian(), gn.full_hessian()) < 1e-12);
    }

    SUBCASE("t = 0 observations only give a zero Hessian") {
        ObservationSet plan = spatial_plan(sc.grid.domain_length, 6, 0.0);
        ObservationSet zero_data = sc.observe(plan);
        CalibrationProblem p0(sc.grid, sc.ic, sc.constants, zero_data);
        MisfitEvaluation eval = p0.evaluate(theta, false);
        CHECK(eval.full_hessian().cwiseAbs().maxCoeff() < 1e-20);
    }

    SUBCASE("full Hessian is symmetric and GN part positive semidefinite") {
        MisfitEvaluation eval = problem.evaluate(theta, false);
        Eigen::MatrixXd h = eval.full_hessian();
        CHECK((h - h.transpose()).cwiseAbs().maxCoeff() <
              1e-10 * h.cwiseAbs().maxCoeff());

        MisfitEvaluation gn = problem.evaluate(theta, true);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gn.full_hessian());
        CHECK(es.eigenvalues().minCoeff() >
              -1e-10 * es.eigenvalues().cwiseAbs().maxCoeff());
    }

    SUBCASE("matches second-order central differences of J") {
        MisfitEvaluation eval = problem.evaluate(theta, false);
        Eigen::MatrixXd fd = fd_hessian(problem, theta, 1e-3);
        CHECK(max_relative_difference(eval.full_hessian(), fd) < 1e-4);
    }
}

TEST_CASE("ActiveSubproblem agrees with the full problem on the active slice") {
    FradeScenario sc = small_scenario();
    ObservationSet data = testing::random_observations(sc, 20, 81);
    CalibrationProblem problem(sc.grid, sc.ic, sc.constants, data);

    ParameterVector base = testing::random_interior_point(sc.grid, 82);
    base.set_active_modes(3);
    ActiveSubproblem reduced(problem, base);
    REQUIRE(reduced.dimension() == 6);

    ParameterVector probe = testing::random_interior_point(sc.grid, 83);
    probe.active = base.active;
    Eigen::VectorXd v(6);
    v << probe.values[0], probe.values[1], probe.values[2], probe.values[8],
        probe.values[9], probe.values[10];

    ParameterVector full = base;
    full.set_active_values(v);
    CHECK((reduced.predict(v) - problem.predict(full)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(reduced.misfit(v) == doctest::Approx(problem.misfit(full)).epsilon(1e-12));

    auto [value, grad] = reduced.value_and_gradient(v);
    CHECK(value == doctest::Approx(problem.misfit(full)).epsilon(1e-12));
    const MisfitEvaluation eval = problem.evaluate(full, true);
    const auto idx = full.active_indices();
    for (std::size_t i = 0; i < idx.size(); ++i)
        CHECK(grad[i] == doctest::Approx(eval.gradient[idx[i]]).epsilon(1e-10));
}

TEST_CASE("check_derivatives harness") {
    FradeScenario sc = small_scenario();
    ObservationSet data = testing::random_observations(sc, 12, 31);
    CalibrationProblem problem(sc.grid, sc.ic, sc.constants, data);

    SUBCASE("passes at random admissible points") {
        for (unsigned seed : {41u, 42u, 43u}) {
            ParameterVector theta = testing::random_interior_point(sc.grid, seed);
            DerivativeCheckReport report = check_derivatives(problem, theta);
            CHECK(report.gradient_pass);
            CHECK(report.hessian_pass);
        }
    }

    SUBCASE("gradient consistency: grad J = J^T (c - d)") {
        ParameterVector theta = testing::random_interior_point(sc.grid, 51);
        MisfitEvaluation eval = problem.evaluate(theta, false);
        Eigen::VectorXd res = problem.predict(theta) - data.values;
        Eigen::VectorXd expected = problem.jacobian(theta).transpose() * res;
        CHECK((eval.gradient - expected).cwiseAbs().maxCoeff() <
              1e-11 * expected.cwiseAbs().maxCoeff());
        CHECK(max_relative_difference(eval.gradient, fd_gradient(problem, theta, 1e-6)) <
              1e-5);
    }

    SUBCASE("step sweep shows the truncation/roundoff V") {
        ParameterVector theta = testing::random_interior_point(sc.grid, 61);
        MisfitEvaluation eval = problem.evaluate(theta, false);
        const double e_coarse = max_relative_difference(eval.gradient,
                                                        fd_gradient(problem, theta, 1e-3));
        const double e_mid = max_relative_difference(eval.gradient,
                                                     fd_gradient(problem, theta, 1e-6));
        const double e_fine = max_relative_difference(eval.gradient,
                                                      fd_gradient(problem, theta, 1e-11));
        CHECK(e_mid < e_coarse);   // truncation dominates the coarse step
        CHECK(e_mid < e_fine);     // roundoff dominates the fine step
    }

    SUBCASE("quadratic map: FD Hessian limited only by roundoff") {
        // With data generated by the linearized map, J is exactly quadratic
        // along the linearization, and the FD Hessian of the true J at the
        // same point matches the analytic one at the usual tolerance.
        ParameterVector theta = testing::random_interior_point(sc.grid, 71);
        DerivativeCheckReport report = check_derivatives(problem, theta, 1e-6, 5e-4);
        CHECK(report.hessian_max_rel_error < 1e-4);
    }
}
