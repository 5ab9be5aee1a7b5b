#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "plateau/ensemble.hpp"

using namespace plateau;

namespace {

std::size_t count_kind(const Circuit& c, GateKind kind) {
    return static_cast<std::size_t>(
        std::count_if(c.gates.begin(), c.gates.end(), [&](const Gate& g) { return g.kind == kind; }));
}

// Brute-force all-pairs BFS oracle, independent of the library's ball search.
std::vector<std::vector<std::size_t>> all_pairs(const InteractionGraph& g) {
    const std::size_t n = g.n_vertices();
    std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, SIZE_MAX));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> frontier{s};
        d[s][s] = 0;
        while (!frontier.empty()) {
            std::vector<std::size_t> next;
            for (auto v : frontier)
                for (auto w : g.neighbors(v))
                    if (d[s][w] == SIZE_MAX) {
                        d[s][w] = d[s][v] + 1;
                        next.push_back(w);
                    }
            frontier = std::move(next);
        }
    }
    return d;
}

std::size_t brute_growth(const InteractionGraph& g, std::size_t m) {
    const auto d = all_pairs(g);
    std::size_t best = 0;
    for (const auto& row : d)
        best = std::max<std::size_t>(best, std::count_if(row.begin(), row.end(), [&](std::size_t x) { return x <= m; }));
    return best;
}

}  // namespace

TEST(Ansatz, ChainFourByThreeCounts) {
    const auto c = build_hardware_efficient(4, 3, GraphFamily::Chain);
    EXPECT_EQ(c.param_count, 12u);
    EXPECT_EQ(c.gates.size(), 21u);
    EXPECT_EQ(count_kind(c, GateKind::CNOT), 9u);
}

TEST(Ansatz, SingleQubitHasNoEntanglers) {
    const auto c = build_hardware_efficient(1, 2, GraphFamily::Chain);
    EXPECT_EQ(c.param_count, 2u);
    EXPECT_EQ(count_kind(c, GateKind::CNOT), 0u);
}

TEST(Ansatz, ParameterIndexIsLayerTimesNPlusQubit) {
    for (auto family : {GraphFamily::Chain, GraphFamily::Ring, GraphFamily::Grid2D, GraphFamily::Complete}) {
        const std::size_t n = 6, depth = 3;
        const auto c = build_hardware_efficient(n, depth, family);
        ASSERT_EQ(c.param_count, n * depth);
        std::set<std::size_t> seen;
        for (std::size_t p = 0; p < c.param_count; ++p) {
            const Gate& g = c.gates[c.param_gate[p]];
            EXPECT_EQ(g.kind, GateKind::RY);
            EXPECT_EQ(g.qubits[0], p % n);
            seen.insert(*g.param);
        }
        EXPECT_EQ(seen.size(), n * depth);
    }
}

TEST(Ansatz, EntanglersFollowTheInteractionGraph) {
    for (auto family : {GraphFamily::Chain, GraphFamily::Ring, GraphFamily::Grid2D}) {
        const auto c = build_hardware_efficient(6, 2, family);
        for (const auto& g : c.gates) {
            if (g.kind != GateKind::CNOT) continue;
            const auto& nb = c.graph.neighbors(g.qubits[0]);
            EXPECT_NE(std::find(nb.begin(), nb.end(), g.qubits[1]), nb.end()) << to_string(family);
        }
    }
}

TEST(Circuit, FinalizeRejectsSharedAndMissingParameters) {
    Circuit c;
    c.n_qubits = 2;
    c.gates = {Gate::ry(0, 0), Gate::ry(1, 0)};
    EXPECT_THROW(c.finalize(), std::invalid_argument);
    c.gates = {Gate::ry(0, 1)};
    EXPECT_THROW(c.finalize(), std::invalid_argument);
    c.gates = {Gate::ry(2, 0)};
    EXPECT_THROW(c.finalize(), std::out_of_range);
}

TEST(ParamPoint, ShiftWrapsOntoTorus) {
    const ParamPoint p(std::vector<double>{6.0, 0.1});
    const auto s = p.shifted({{0, 1.0}, {1, -0.3}});
    EXPECT_NEAR(s[0], 7.0 - kTwoPi, 1e-15);
    EXPECT_NEAR(s[1], kTwoPi - 0.2, 1e-15);
    EXPECT_THROW(p.shifted({{2, 1.0}}), std::out_of_range);
}

TEST(Graph, FamiliesAreUndirectedWithoutSelfLoops) {
    for (auto family : {GraphFamily::Chain, GraphFamily::Ring, GraphFamily::Grid2D, GraphFamily::Complete}) {
        const auto g = InteractionGraph::make(family, 12);
        for (std::size_t v = 0; v < g.n_vertices(); ++v) {
            for (auto w : g.neighbors(v)) {
                EXPECT_NE(v, w);
                const auto& back = g.neighbors(w);
                EXPECT_NE(std::find(back.begin(), back.end(), v), back.end());
            }
        }
    }
}

TEST(Graph, GridRejectsPrimeSizes) {
    EXPECT_THROW(InteractionGraph::make(GraphFamily::Grid2D, 7), std::invalid_argument);
    const auto g = InteractionGraph::make(GraphFamily::Grid2D, 6);
    EXPECT_EQ(g.rows() * g.cols(), 6u);
}

TEST(Graph, DistanceExamples) {
    const auto chain = InteractionGraph::make(GraphFamily::Chain, 10);
    const std::vector<std::size_t> a{1}, b{7}, ab{1, 7};
    EXPECT_EQ(graph_distance(chain, a, b), 6u);
    EXPECT_EQ(graph_distance(chain, ab, b), 0u);
    const auto complete = InteractionGraph::make(GraphFamily::Complete, 9);
    EXPECT_EQ(graph_distance(complete, a, b), 1u);
}

TEST(Graph, GrowthFunctionExamples) {
    const auto chain = InteractionGraph::make(GraphFamily::Chain, 100);
    EXPECT_EQ(growth_function(chain, 0), 1u);
    EXPECT_EQ(growth_function(chain, 3), 7u);
    EXPECT_EQ(growth_function(chain, 3), brute_growth(chain, 3));
    EXPECT_EQ(growth_function(chain, 5), 11u);
    const auto complete = InteractionGraph::make(GraphFamily::Complete, 13);
    EXPECT_EQ(growth_function(complete, 1), 13u);
}

TEST(Graph, GrowthMatchesBruteForceOnAllFamilies) {
    for (auto family : {GraphFamily::Chain, GraphFamily::Ring, GraphFamily::Grid2D, GraphFamily::Complete}) {
        const auto g = InteractionGraph::make(family, 20);
        for (std::size_t m = 0; m < 8; ++m) EXPECT_EQ(growth_function(g, m), brute_growth(g, m)) << to_string(family);
    }
}

TEST(Graph, GridGrowthRoughlyQuadratic) {
    // Doubling the radius multiplies the ball by 3 to 5 before saturation.
    const auto g = InteractionGraph::grid(40, 40);
    for (std::size_t m : {2, 3, 4, 5}) {
        const double ratio = static_cast<double>(growth_function(g, 2 * m)) / growth_function(g, m);
        EXPECT_GE(ratio, 3.0);
        EXPECT_LE(ratio, 5.0);
    }
}

TEST(Lightcone, ZeroDepthIsSupport) {
    const auto c = build_hardware_efficient(5, 0, GraphFamily::Chain);
    const std::vector<std::size_t> support{1, 3};
    const auto cone = backward_lightcone(c, support);
    EXPECT_EQ(cone.qubits, support);
    EXPECT_TRUE(cone.params.empty());
}

TEST(Lightcone, ChainOneLayerStaysWithinTwoSteps) {
    const auto c = build_hardware_efficient(8, 1, GraphFamily::Chain);
    const std::vector<std::size_t> support{3};
    const auto cone = backward_lightcone(c, support);
    for (auto q : cone.qubits) {
        EXPECT_GE(q, 1u);
        EXPECT_LE(q, 5u);
    }
    EXPECT_EQ(cone.params, std::vector<std::size_t>{3});
}

TEST(Lightcone, ConeLiesInsideGraphBall) {
    for (auto family : {GraphFamily::Chain, GraphFamily::Ring, GraphFamily::Grid2D}) {
        for (std::size_t depth : {1, 2, 3}) {
            const auto c = build_hardware_efficient(12, depth, family);
            for (std::size_t q = 0; q < 12; ++q) {
                const std::vector<std::size_t> s{q};
                const auto cone = backward_lightcone(c, s);
                const auto ball = graph_ball(c.graph, s, 2 * depth);
                for (auto v : cone.qubits) EXPECT_TRUE(std::binary_search(ball.begin(), ball.end(), v));
            }
        }
    }
}

TEST(Lightcone, ParametersOutsideConeHaveZeroDerivatives) {
    const std::size_t n = 8;
    const auto c = build_hardware_efficient(n, 2, GraphFamily::Chain);
    const auto obs = make_single_term(n, PauliTerm(1.0, {{0, Pauli::Z}}));
    const std::vector<std::size_t> support{0};
    const auto cone = backward_lightcone(c, support);
    const auto theta = draw_initialization(c.param_count, 41);
    std::size_t outside = 0;
    for (std::size_t j = 0; j < c.param_count; ++j) {
        if (std::binary_search(cone.params.begin(), cone.params.end(), j)) continue;
        ++outside;
        EXPECT_NEAR(grad_entry_exact(c, obs, theta, j), 0.0, 1e-12);
        EXPECT_NEAR(hessian_entry_exact(c, obs, theta, j, j).value, 0.0, 1e-12);
        // Changing an outside parameter leaves the cost untouched.
        EXPECT_NEAR(cost(c, obs, oracle::bump(theta, j, 1.3)), cost(c, obs, theta), 1e-13);
    }
    EXPECT_GT(outside, 0u);
}

TEST(Lightcone, RejectsEmptySupport) {
    const auto c = build_hardware_efficient(3, 1, GraphFamily::Chain);
    EXPECT_THROW(backward_lightcone(c, std::vector<std::size_t>{}), std::invalid_argument);
}
