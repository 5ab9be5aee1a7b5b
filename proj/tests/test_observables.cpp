#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "plateau/ensemble.hpp"
#include "plateau/execute.hpp"

using namespace plateau;

namespace {

// |+> on every qubit.
Statevector plus_state(std::size_t n) {
    Statevector s(n);
    for (std::size_t q = 0; q < n; ++q) s.apply_h(q);
    return s;
}

}  // namespace

TEST(GlobalParity, Examples) {
    const auto obs = make_global_parity(3);
    ASSERT_EQ(obs.terms().size(), 1u);
    EXPECT_EQ(obs.terms()[0].label(3), "ZZZ");
    EXPECT_EQ(obs.declared_norm_bound(), 1.0);
    EXPECT_EQ(expectation(Statevector(3), obs), 1.0);
    EXPECT_EQ(expectation(Statevector::basis_state(3, 1), obs), -1.0);
}

TEST(LocalZAverage, Examples) {
    const auto obs = make_local_z_average(4);
    EXPECT_EQ(obs.terms().size(), 4u);
    EXPECT_EQ(obs.locality(), 1u);
    EXPECT_TRUE(obs.term_wise_local());
    EXPECT_DOUBLE_EQ(expectation(Statevector(4), obs), 1.0);
    // |01>: qubit 1 flipped.
    EXPECT_DOUBLE_EQ(expectation(Statevector::basis_state(2, 2), make_local_z_average(2)), 0.0);
}

TEST(LocalZAverage, MatchesMeanOfSingleQubitValues) {
    const std::size_t n = 5;
    const auto c = build_hardware_efficient(n, 3, GraphFamily::Chain);
    const auto psi = prepare_state(c, draw_initialization(c.param_count, 12));
    double total = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
        total += oracle::dense_expectation(psi, make_single_term(n, PauliTerm(1.0, {{q, Pauli::Z}})));
    }
    EXPECT_NEAR(expectation(psi, make_local_z_average(n)), total / n, 1e-12);
}

TEST(Tfim, ZeroStateEnergyDensity) {
    const auto obs = make_tfim_density(4, 1.0, 1.0);
    EXPECT_NEAR(expectation(Statevector(4), obs), -0.5, 1e-15);
    EXPECT_NEAR(oracle::dense_expectation(Statevector(4), obs), -0.5, 1e-15);
    EXPECT_EQ(obs.locality(), 2u);
    EXPECT_EQ(obs.terms().size(), 8u);
}

TEST(Tfim, PureFieldOnPlusState) {
    for (double h : {0.5, 1.0, 2.0}) {
        const auto obs = make_tfim_density(5, 0.0, h);
        EXPECT_NEAR(expectation(plus_state(5), obs), -h / 2.0, 1e-14);
    }
}

TEST(Tfim, HamiltonianIsTwoNTimesDensity) {
    const std::size_t n = 4;
    const auto c = build_hardware_efficient(n, 2, GraphFamily::Ring);
    const auto psi = prepare_state(c, draw_initialization(c.param_count, 3));
    EXPECT_NEAR(expectation(psi, make_tfim_hamiltonian(n, 1.0, 0.7)),
                2.0 * n * expectation(psi, make_tfim_density(n, 1.0, 0.7)), 1e-12);
    EXPECT_NEAR(expectation(psi, make_tfim_hamiltonian(n, 1.0, 0.7)),
                oracle::dense_expectation(psi, make_tfim_hamiltonian(n, 1.0, 0.7)), 1e-12);
}

TEST(Tfim, RequiresThreeSites) {
    EXPECT_THROW(make_tfim_density(2, 1.0, 1.0), std::invalid_argument);
}

TEST(Observable, ValuesStayWithinDeclaredNorm) {
    for (CostKind kind : {CostKind::Global, CostKind::Local, CostKind::Tfim}) {
        const std::size_t n = 5;
        const auto obs = make_cost_observable(kind, n);
        const auto c = build_hardware_efficient(n, 3, GraphFamily::Chain);
        for (std::uint64_t s = 0; s < 50; ++s) {
            EXPECT_LE(std::abs(cost(c, obs, draw_initialization(c.param_count, s))),
                      obs.declared_norm_bound() + 1e-12);
        }
    }
}

TEST(Observable, TermwiseLocalKindsRejectLargeCoefficients) {
    EXPECT_THROW(Observable(2, ObservableKind::LocalCustom, {PauliTerm(1.5, {{0, Pauli::Z}})}, 1.5),
                 std::invalid_argument);
    EXPECT_NO_THROW(Observable(2, ObservableKind::GlobalCustom, {PauliTerm(1.5, {{0, Pauli::Z}})}, 1.5));
    EXPECT_THROW(Observable(2, ObservableKind::GlobalCustom, {PauliTerm(1.0, {{2, Pauli::Z}})}, 1.0),
                 std::out_of_range);
}

TEST(Observable, IdentityIsConstant) {
    const auto c = build_hardware_efficient(3, 2, GraphFamily::Chain);
    EXPECT_DOUBLE_EQ(cost(c, make_identity(3, 0.25), draw_initialization(c.param_count, 1)), 0.25);
}

TEST(PauliTerm, MeasurementBasis) {
    EXPECT_EQ(PauliTerm(1.0, {{0, Pauli::Z}, {2, Pauli::Z}}).basis(), MeasurementBasis::Z);
    EXPECT_EQ(PauliTerm(1.0, {{1, Pauli::X}}).basis(), MeasurementBasis::X);
    EXPECT_EQ(PauliTerm(1.0, {{0, Pauli::X}, {1, Pauli::Z}}).basis(), MeasurementBasis::Mixed);
    EXPECT_EQ(PauliTerm().basis(), MeasurementBasis::Identity);
}
