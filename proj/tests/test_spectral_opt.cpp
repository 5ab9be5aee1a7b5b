#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "plateau/ensemble.hpp"
#include "plateau/optimize.hpp"
#include "plateau/spectral.hpp"

using namespace plateau;

TEST(Spectrum, SingleQubitAtZero) {
    const auto c = build_hardware_efficient(1, 1, GraphFamily::Chain);
    const auto s = hessian_spectrum(c, make_global_parity(1), ParamPoint(1, 0.0));
    ASSERT_EQ(s.eigenvalues.size(), 1u);
    EXPECT_NEAR(s.eigenvalues[0], -1.0, 1e-15);
    EXPECT_NEAR(s.lambda_rms, 1.0, 1e-15);
    EXPECT_EQ(s.deg_eps, 0.0);
}

TEST(Spectrum, ZeroRowIsCountedAsFlat) {
    // Z_0 on CHAIN(6), L=1: the last qubit's rotation never reaches the observable.
    const auto c = build_hardware_efficient(6, 1, GraphFamily::Chain);
    const auto obs = make_single_term(6, PauliTerm(1.0, {{0, Pauli::Z}}));
    const auto theta = draw_initialization(c.param_count, 3);
    const auto h = full_hessian_exact(c, obs, theta);
    EXPECT_EQ(h.row(5).cwiseAbs().maxCoeff(), 0.0);
    const auto s = symmetric_spectrum(h, 1e-4);
    const auto zeros = std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(),
                                     [](double l) { return std::abs(l) < 1e-12; });
    EXPECT_GE(zeros, 1);
    EXPECT_GE(s.deg_eps, 1.0 / 6.0);
}

TEST(Spectrum, MatchesFiniteDifferenceHessian) {
    const auto c = build_hardware_efficient(3, 2, GraphFamily::Chain);
    const auto obs = make_global_parity(3);
    const auto theta = draw_initialization(c.param_count, 15);
    const auto m = static_cast<Eigen::Index>(c.param_count);
    Eigen::MatrixXd fd(m, m);
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index k = 0; k < m; ++k)
            fd(j, k) = oracle::fd_hessian(c, obs, theta, static_cast<std::size_t>(j), static_cast<std::size_t>(k), 1e-3);
    fd = 0.5 * (fd + fd.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(fd);
    const auto s = hessian_spectrum(c, obs, theta);
    for (Eigen::Index i = 0; i < m; ++i) EXPECT_NEAR(s.eigenvalues[static_cast<std::size_t>(i)], solver.eigenvalues()[i], 1e-4);
}

TEST(Spectrum, ConsistencyAndSummary) {
    Eigen::MatrixXd h(3, 3);
    h << 2, 1, 0, 1, 2, 0, 0, 0, 0;
    const auto s = symmetric_spectrum(h, 1e-4);
    EXPECT_NEAR(s.eigenvalues[0], 0.0, 1e-14);
    EXPECT_NEAR(s.eigenvalues[2], 3.0, 1e-14);
    EXPECT_NEAR(s.lambda_rms, std::sqrt(10.0 / 3.0), 1e-14);
    EXPECT_NEAR(s.deg_eps, 1.0 / 3.0, 1e-15);
    const auto gap = spectral_consistency(h, s.eigenvalues);
    EXPECT_LT(gap.frobenius_gap, 1e-12);
    EXPECT_LT(gap.trace_gap, 1e-12);
    const SpectralSummary parts[2] = {s, summarize_eigenvalues({5.0}, 1e-4)};
    const auto pooled = pool_spectra(parts);
    EXPECT_EQ(pooled.eigenvalues.size(), 4u);
    EXPECT_NEAR(pooled.deg_eps, 0.25, 1e-15);
}

TEST(Metric, SingleQubitGreatCircle) {
    const auto c = build_hardware_efficient(1, 1, GraphFamily::Chain);
    for (double t : {0.0, 1.1, 2.7}) {
        const auto f = qng_metric(c, ParamPoint(std::vector<double>{t}), 1e-12);
        EXPECT_NEAR(f(0, 0), 0.25, 1e-11);
    }
}

TEST(Metric, SymmetricPositiveAndBounded) {
    const auto c = build_hardware_efficient(4, 3, GraphFamily::Ring);
    const double lambda = 1e-3;
    const auto f = qng_metric(c, draw_initialization(c.param_count, 9), lambda);
    EXPECT_LT((f - f.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    for (Eigen::Index i = 0; i < f.rows(); ++i) EXPECT_LE(f(i, i), 0.25 + lambda + 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(f);
    EXPECT_GE(solver.eigenvalues().minCoeff(), lambda - 1e-12);
}

TEST(Metric, ParameterWithoutEffectGetsRegularizerOnly) {
    // RZ acting first on |0> only changes a global phase.
    Circuit c;
    c.n_qubits = 1;
    c.graph = InteractionGraph::make(GraphFamily::Chain, 1);
    c.gates = {Gate::rz(0, 0), Gate::ry(0, 1)};
    c.finalize();
    const auto f = qng_metric(c, ParamPoint(std::vector<double>{0.4, 1.3}), 1.0);
    EXPECT_NEAR(f(0, 0), 1.0, 1e-14);
    EXPECT_NEAR(f(0, 1), 0.0, 1e-14);
    EXPECT_NEAR(f(1, 1), 1.25, 1e-14);
}

TEST(Metric, IdentityMetricGivesGradientDirection) {
    Eigen::VectorXd g(3);
    g << 0.3, -1.0, 2.0;
    EXPECT_LT((natural_gradient_direction(Eigen::MatrixXd::Identity(3, 3), g) - g).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Trajectory, ExactGradientFlowOnCosine) {
    TrajectoryConfig cfg;
    cfg.n = 1;
    cfg.depth = 1;
    cfg.cost = CostKind::Global;
    cfg.shots.reset();
    cfg.step_size = 0.1;
    cfg.iterations = 300;
    cfg.n_seeds = 5;
    const auto tr = run_trajectory(cfg);
    ASSERT_EQ(tr.records.size(), 301u);
    for (const auto& costs : tr.seed_costs) {
        for (std::size_t i = 1; i < costs.size(); ++i) EXPECT_LE(costs[i], costs[i - 1] + 1e-15);
        EXPECT_LT(costs.back(), -0.99);
    }
}

TEST(Trajectory, ZeroStepIsFlatAndZeroIterationsKeepsInitialRow) {
    auto cfg = TrajectoryConfig::defaults(Optimizer::Qng);
    cfg.n = 3;
    cfg.depth = 2;
    cfg.iterations = 5;
    cfg.n_seeds = 3;
    cfg.step_size = 0.0;
    const auto flat = run_trajectory(cfg);
    for (const auto& r : flat.records) EXPECT_EQ(r.mean_cost, flat.records[0].mean_cost);
    EXPECT_EQ(flat.shifted_evaluations_per_iteration, 2 * 6u);
    cfg.iterations = 0;
    EXPECT_EQ(run_trajectory(cfg).records.size(), 1u);
}

TEST(Trajectory, DefaultsAndDeterminism) {
    const auto sgd = TrajectoryConfig::defaults(Optimizer::Sgd);
    const auto qng = TrajectoryConfig::defaults(Optimizer::Qng);
    EXPECT_EQ(sgd.step_size, 0.05);
    EXPECT_EQ(qng.step_size, 0.02);
    EXPECT_EQ(sgd.shots, 100u);
    auto cfg = sgd;
    cfg.n = 3;
    cfg.depth = 2;
    cfg.iterations = 4;
    cfg.n_seeds = 3;
    const auto a = run_trajectory(cfg);
    cfg.threads = 3;
    const auto b = run_trajectory(cfg);
    EXPECT_EQ(a.seed_costs, b.seed_costs);
}
