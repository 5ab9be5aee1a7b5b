#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "plateau/ensemble.hpp"
#include "plateau/rng.hpp"
#include "plateau/stats.hpp"

using namespace plateau;

namespace {

double weight_sum(const ShiftRule& r) {
    double s = 0.0;
    for (double w : r.weights()) s += w;
    return s;
}

}  // namespace

TEST(ShiftRule, Constants) {
    const auto g = ShiftRule::gradient(2);
    const auto d = ShiftRule::diagonal(2);
    const auto o = ShiftRule::off_diagonal(1, 4);
    EXPECT_EQ(g.size(), 2u);
    EXPECT_EQ(d.size(), 3u);
    EXPECT_EQ(o.size(), 4u);
    EXPECT_DOUBLE_EQ(g.c_s(), 0.5);
    EXPECT_DOUBLE_EQ(d.c_s(), 0.375);
    EXPECT_DOUBLE_EQ(o.c_s(), 0.25);
    EXPECT_DOUBLE_EQ(d.abs_weight_sum(), 1.0);
    EXPECT_DOUBLE_EQ(o.abs_weight_sum(), 1.0);
    EXPECT_DOUBLE_EQ(weight_sum(d), 0.0);
    EXPECT_DOUBLE_EQ(weight_sum(o), 0.0);
    EXPECT_THROW(ShiftRule::off_diagonal(3, 3), std::invalid_argument);
    EXPECT_EQ(ShiftRule::hessian(5, 5).kind(), ShiftRule::Kind::Diagonal);
    EXPECT_EQ(ShiftRule::hessian(5, 2).kind(), ShiftRule::Kind::OffDiagonal);
}

TEST(ShiftRule, ShiftVectors) {
    const auto d = ShiftRule::diagonal(2);
    EXPECT_DOUBLE_EQ(d.entries()[0].shift.at(0).second, M_PI);
    EXPECT_TRUE(d.entries()[1].shift.empty());
    EXPECT_DOUBLE_EQ(d.entries()[2].shift.at(0).second, -M_PI);
    const auto off = ShiftRule::off_diagonal(0, 1);
    for (const auto& e : off.entries()) {
        ASSERT_EQ(e.shift.size(), 2u);
        EXPECT_DOUBLE_EQ(std::abs(e.shift[0].second), M_PI / 2);
        EXPECT_DOUBLE_EQ(std::abs(e.shift[1].second), M_PI / 2);
        // weight sign = product of shift signs
        EXPECT_GT(e.weight * e.shift[0].second * e.shift[1].second, 0.0);
    }
}

TEST(Cost, ZeroAnglesGiveParityOne) {
    const auto c = build_hardware_efficient(5, 3, GraphFamily::Chain);
    EXPECT_DOUBLE_EQ(cost(c, make_global_parity(5), ParamPoint(c.param_count, 0.0)), 1.0);
}

TEST(Derivatives, SingleQubitCosine) {
    const auto c = build_hardware_efficient(1, 1, GraphFamily::Chain);
    const auto z = make_global_parity(1);
    for (double t : {0.0, 0.4, 1.9, 3.3, 5.8}) {
        const ParamPoint p(std::vector<double>{t});
        EXPECT_NEAR(cost(c, z, p), std::cos(t), 1e-14);
        EXPECT_NEAR(grad_entry_exact(c, z, p, 0), -std::sin(t), 1e-14);
        EXPECT_NEAR(hessian_entry_exact(c, z, p, 0, 0).value, -std::cos(t), 1e-14);
    }
}

TEST(Derivatives, ConstantCostHasExactlyZeroHessian) {
    const auto c = build_hardware_efficient(3, 2, GraphFamily::Chain);
    const auto theta = draw_initialization(c.param_count, 4);
    const auto id = make_identity(3, 1.0);
    EXPECT_EQ(hessian_entry_exact(c, id, theta, 1, 1).value, 0.0);
    EXPECT_EQ(hessian_entry_exact(c, id, theta, 1, 4).value, 0.0);
}

TEST(Derivatives, GradientMatchesFiniteDifferences) {
    const auto c = build_hardware_efficient(4, 3, GraphFamily::Ring);
    const auto obs = make_tfim_density(4, 1.0, 1.0);
    const auto theta = draw_initialization(c.param_count, 99);
    const auto g = gradient_exact(c, obs, theta);
    for (std::size_t j = 0; j < c.param_count; ++j) {
        EXPECT_NEAR(g[static_cast<Eigen::Index>(j)], oracle::fd_gradient(c, obs, theta, j, 1e-4), 1e-6);
    }
}

TEST(Derivatives, HessianMatchesFiniteDifferences) {
    const auto c = build_hardware_efficient(3, 2, GraphFamily::Chain);
    const auto obs = make_local_z_average(3);
    const auto theta = draw_initialization(c.param_count, 100);
    const auto h = full_hessian_exact(c, obs, theta);
    for (std::size_t j = 0; j < c.param_count; ++j) {
        for (std::size_t k = 0; k < c.param_count; ++k) {
            EXPECT_NEAR(h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)),
                        oracle::fd_hessian(c, obs, theta, j, k, 1e-3), 1e-5);
        }
    }
}

TEST(Derivatives, HessianEntryIsSymmetricInIndices) {
    const auto c = build_hardware_efficient(4, 2, GraphFamily::Chain);
    const auto obs = make_global_parity(4);
    const auto theta = draw_initialization(c.param_count, 6);
    EXPECT_EQ(hessian_entry_exact(c, obs, theta, 2, 5).value, hessian_entry_exact(c, obs, theta, 5, 2).value);
}

TEST(Derivatives, FullHessianExactlySymmetricAndThreadIndependent) {
    const auto c = build_hardware_efficient(4, 2, GraphFamily::Ring);
    const auto obs = make_tfim_density(4, 1.0, 1.0);
    const auto theta = draw_initialization(c.param_count, 8);
    const auto h1 = full_hessian_exact(c, obs, theta, kDefaultHessianCap, 1);
    const auto h3 = full_hessian_exact(c, obs, theta, kDefaultHessianCap, 3);
    EXPECT_EQ((h1 - h1.transpose()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((h1 - h3).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_THROW(full_hessian_exact(c, obs, theta, 4), std::invalid_argument);
}

TEST(Derivatives, EntryValueIsWeightedSumOfShiftedCosts) {
    const auto c = build_hardware_efficient(3, 2, GraphFamily::Chain);
    const auto obs = make_global_parity(3);
    const auto theta = draw_initialization(c.param_count, 2);
    for (auto [j, k] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {0, 4}}) {
        const auto est = hessian_entry_exact(c, obs, theta, j, k);
        const auto rule = ShiftRule::hessian(j, k);
        double v = 0.0;
        for (std::size_t s = 0; s < rule.size(); ++s) v += rule.entries()[s].weight * est.shifted_costs[s];
        EXPECT_EQ(v, est.value);
    }
}

TEST(Derivatives, RejectsBadIndices) {
    const auto c = build_hardware_efficient(2, 1, GraphFamily::Chain);
    const ParamPoint theta(c.param_count, 0.1);
    EXPECT_THROW(grad_entry_exact(c, make_global_parity(2), theta, 2), std::out_of_range);
    EXPECT_THROW(hessian_entry_exact(c, make_global_parity(3), theta, 0, 0), std::invalid_argument);
}

TEST(ShotEstimates, DeterministicStateHasNoNoise) {
    const auto c = build_hardware_efficient(4, 2, GraphFamily::Chain);
    const auto obs = make_global_parity(4);
    const ParamPoint zero(c.param_count, 0.0);
    Rng rng(3);
    for (std::size_t shots : {1, 7, 1000}) EXPECT_EQ(sample_cost(c, obs, zero, shots, rng), 1.0);
    // Shifts by +-pi flip one qubit deterministically, so every shifted cost is +-1.
    EXPECT_EQ(hessian_entry_shot_variance(c, obs, zero, 2, 2, 100), 0.0);
    const auto est = hessian_entry_shots(c, obs, zero, 2, 2, 100, rng);
    EXPECT_EQ(est.value, hessian_entry_exact(c, obs, zero, 2, 2).value);
}

TEST(ShotEstimates, LargeBudgetConvergesToExact) {
    const auto c = build_hardware_efficient(3, 2, GraphFamily::Chain);
    const auto obs = make_local_z_average(3);
    const auto theta = draw_initialization(c.param_count, 31);
    Rng rng(32);
    EXPECT_NEAR(sample_cost(c, obs, theta, 1000000, rng), cost(c, obs, theta), 5e-3);
    EXPECT_NEAR(hessian_entry_shots(c, obs, theta, 0, 0, 1000000, rng).value,
                hessian_entry_exact(c, obs, theta, 0, 0).value, 3e-3);
}

TEST(ShotEstimates, UnbiasedWithPredictedSpread) {
    const auto c = build_hardware_efficient(3, 2, GraphFamily::Ring);
    const auto obs = make_tfim_density(3, 1.0, 1.0);
    const auto theta = draw_initialization(c.param_count, 50);
    Rng rng(51);
    for (auto [j, k] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {1, 3}}) {
        std::vector<double> draws(10000);
        for (auto& d : draws) d = hessian_entry_shots(c, obs, theta, j, k, 20, rng).value;
        const double predicted = hessian_entry_shot_variance(c, obs, theta, j, k, 20);
        EXPECT_NEAR(mean(draws), hessian_entry_exact(c, obs, theta, j, k).value,
                    4.0 * std::sqrt(predicted / draws.size()));
        EXPECT_NEAR(sample_variance(draws), predicted, 4.0 * variance_standard_error(draws));
        EXPECT_LE(predicted, ShiftRule::hessian(j, k).c_s() * std::pow(obs.declared_norm_bound(), 2) / 20.0);
    }
}

TEST(ShotEstimates, GradientWithShotsIsUnbiased) {
    const auto c = build_hardware_efficient(2, 2, GraphFamily::Chain);
    const auto obs = make_global_parity(2);
    const auto theta = draw_initialization(c.param_count, 70);
    const auto exact = gradient_exact(c, obs, theta);
    Rng rng(71);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(exact.size());
    const int reps = 4000;
    for (int i = 0; i < reps; ++i) acc += gradient_shots(c, obs, theta, 50, rng);
    acc /= reps;
    // Per-entry std <= sqrt(1/2 / 50 / reps).
    EXPECT_LT((acc - exact).cwiseAbs().maxCoeff(), 4.0 * std::sqrt(0.5 / 50 / reps));
}

TEST(ShotEstimates, RejectZeroShots) {
    const auto c = build_hardware_efficient(2, 1, GraphFamily::Chain);
    Rng rng(0);
    EXPECT_THROW(hessian_entry_shots(c, make_global_parity(2), ParamPoint(2, 0.0), 0, 0, 0, rng),
                 std::invalid_argument);
}
