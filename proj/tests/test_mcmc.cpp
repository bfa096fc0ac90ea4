#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "opcal/mcmc.hpp"
#include "opcal/newton.hpp"
#include "opcal/sensitivity.hpp"
#include "opcal/positivity.hpp"
#include "support/scenarios.hpp"
#include "support/stats.hpp"

using namespace opcal;
using testing::FradeScenario;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

TargetDensity uniform_box_target(int dim) {
    TargetDensity t;
    t.log_density = [](const Eigen::VectorXd& v) {
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (v[i] < 0.0 || v[i] > 1.0) return -kInf;
        return 0.0;
    };
    t.gradient = [dim](const Eigen::VectorXd&) { return Eigen::VectorXd::Zero(dim); };
    return t;
}
}  // namespace

TEST_CASE("zero-information target: marginals are uniform") {
    const int dim = 4;
    ChainOptions options;
    options.n_steps = 100000;
    options.burn_in = 2000;
    options.step_size = 0.3;
    options.seed = 314;

    Chain chain = mmala_sample(uniform_box_target(dim),
                               Eigen::VectorXd::Constant(dim, 0.5),
                               Eigen::MatrixXd::Identity(dim, dim), options);
    CHECK(chain.acceptance_rate > 0.1);
    CHECK(chain.acceptance_rate < 1.0);

    // KS needs near-independent draws; thin the correlated chain first.
    const int stride = 50;
    for (int j = 0; j < dim; ++j) {
        std::vector<double> sub;
        for (int i = 0; i < chain.length(); i += stride) sub.push_back(chain.states(i, j));
        CHECK(testing::ks_uniform_pvalue(std::move(sub)) > 0.01);
    }
}

TEST_CASE("conjugate Gaussian posterior: moments match the analytic values") {
    // x_i ~ N(theta, s^2) with prior theta ~ N(m0, s0^2)
    const double s = 0.7, m0 = -0.3, s0 = 1.5;
    const int n = 25;
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd(0.4, s);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += nd(rng);
    const double xbar = sum / n;

    const double post_var = 1.0 / (1.0 / (s0 * s0) + n / (s * s));
    const double post_mean = post_var * (m0 / (s0 * s0) + n * xbar / (s * s));

    TargetDensity target;
    target.log_density = [=](const Eigen::VectorXd& v) {
        const double d = v[0] - post_mean;
        return -0.5 * d * d / post_var;
    };
    target.gradient = [=](const Eigen::VectorXd& v) {
        Eigen::VectorXd g(1);
        g[0] = -(v[0] - post_mean) / post_var;
        return g;
    };

    ChainOptions options;
    options.n_steps = 60000;
    options.burn_in = 2000;
    options.step_size = 1.0;
    options.seed = 99;
    Eigen::MatrixXd metric(1, 1);
    metric << 1.0 / post_var;

    Chain chain = mmala_sample(target, Eigen::VectorXd::Zero(1), metric, options);

    const double se_mean = testing::batch_means_se(chain.states.col(0));
    CHECK(std::abs(chain.mean()[0] - post_mean) < 3.0 * se_mean);

    Eigen::VectorXd sq = chain.states.col(0).array().square();
    const double se_second = testing::batch_means_se(sq);
    const double second_moment = sq.mean();
    const double expected_second = post_var + post_mean * post_mean;
    CHECK(std::abs(second_moment - expected_second) < 3.0 * se_second);
}

TEST_CASE("metric regularization") {
    SUBCASE("indefinite metrics are floored to positive definite") {
        Eigen::MatrixXd h(2, 2);
        h << 4.0, 0.0, 0.0, -1.0;
        Eigen::MatrixXd m = regularize_metric(h, 1e-8);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
        CHECK(es.eigenvalues().minCoeff() > 0.0);
        CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(4.0));
    }
    SUBCASE("a nonpositive spectrum is an error naming the eigenvalue") {
        Eigen::MatrixXd h = -Eigen::MatrixXd::Identity(2, 2);
        CHECK_THROWS_WITH_AS(regularize_metric(h, 1e-8),
                             doctest::Contains("eigenvalue"), NumericalError);
    }
}

TEST_CASE("posterior sampling of the calibration problem") {
    FradeScenario sc = FradeScenario::standard(64);
    ObservationSet plan = spatial_plan(sc.grid.domain_length, 30, 0.5);
    ObservationSet clean = sc.observe(plan);
    const double sigma = 0.01 * clean.values.cwiseAbs().maxCoeff();
    ObservationSet data =
        with_values(plan, add_gaussian_noise(clean.values, sigma, 404), sigma);
    CalibrationProblem problem(sc.grid, sc.ic, sc.constants, data);

    // The Bayesian staging: optimize over the full parameter space for the
    // MAP seed, then reduce to the sensitive subset for the sampling. A
    // reduced-first ordering would freeze the tail at the initial guess,
    // which either pollutes the fit (weakly damped guess) or censors the
    // sensitivities (strongly damped guess).
    ParameterVector theta0 = ParameterVector::constant(sc.grid, 0.0, 0.5);
    NewtonOptions nopt;
    nopt.max_iterations = 250;
    NewtonReport map = newton_map(problem, theta0, ParameterBounds{}, nopt);
    REQUIRE(map.objective <= problem.misfit(ParameterVector::from_spectrum(sc.truth)));

    SensitivityResult s = sensitivity_cutoff(problem, map.solution, 1e-2);
    REQUIRE(s.cutoff >= 5);
    map.solution = apply_cutoff(map.solution, s);

    ChainOptions copt;
    copt.n_steps = 20000;
    copt.burn_in = 2000;
    copt.step_size = 0.6;
    copt.seed = 777;

    Chain chain = mcmc_sample(problem, map.solution, ParameterBounds{}, copt);
    CHECK(chain.dimension() == 2 * s.cutoff);
    CHECK(chain.acceptance_rate > 0.1);

    // states stay inside the prior support
    CHECK(chain.states.minCoeff() >= 0.0);
    CHECK(chain.states.maxCoeff() <= 1.0);

    // reproducible from the seed, distinct across seeds
    Chain again = mcmc_sample(problem, map.solution, ParameterBounds{}, copt);
    CHECK((again.states - chain.states).cwiseAbs().maxCoeff() == 0.0);
    ChainOptions other_seed = copt;
    other_seed.seed = 778;
    Chain other = mcmc_sample(problem, map.solution, ParameterBounds{}, other_seed);
    CHECK((other.states - chain.states).cwiseAbs().maxCoeff() > 0.0);

    // central 95% intervals of the first five mode pairs cover the truth
    ParameterVector truth = ParameterVector::from_spectrum(sc.truth);
    const auto& idx = chain.parameter_indices;
    const int nk = sc.grid.n_modes;
    int checked = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        const int mode = (idx[j] < nk) ? idx[j] + 1 : idx[j] - nk + 1;
        if (mode > 5) continue;
        ++checked;
        const auto [lo, hi] = chain.central_interval(static_cast<int>(j));
        CHECK(truth.values[idx[j]] >= lo - 1e-9);
        CHECK(truth.values[idx[j]] <= hi + 1e-9);
    }
    CHECK(checked == 10);

    // spatial coverage keeps the MAP-evolved field physical
    PositivityDiagnostic diag = positivity_diagnostic(
        sc.ic, map.solution.spectrum(), sc.constants, {0.25, 0.5, 1.0, 1.5});
    CHECK(diag.min_value > -1e-3 * diag.peak_value);

    // the sampler refuses to run without a noise model
    CalibrationProblem no_noise(sc.grid, sc.ic, sc.constants, clean);
    CHECK_THROWS_AS(mcmc_sample(no_noise, map.solution, ParameterBounds{}, copt),
                    PreconditionError);
}
