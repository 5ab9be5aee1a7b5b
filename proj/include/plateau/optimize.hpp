#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "plateau/circuit.hpp"
#include "plateau/ensemble.hpp"

namespace plateau {

enum class Optimizer { Sgd, Qng };

std::string to_string(Optimizer opt);
Optimizer parse_optimizer(const std::string& name);

/// Fubini-Study metric of the variational family plus lambda_reg * I:
/// F_ij = Re<d_i psi|d_j psi> - Re(<d_i psi|psi><psi|d_j psi>).
Eigen::MatrixXd qng_metric(const Circuit& circuit, const ParamPoint& theta, double lambda_reg);

/// Solves (metric) x = gradient for the natural-gradient direction.
Eigen::VectorXd natural_gradient_direction(const Eigen::MatrixXd& metric, const Eigen::VectorXd& gradient);

struct TrajectoryConfig {
    std::size_t n = 10;
    std::size_t depth = 4;
    GraphFamily family = GraphFamily::Chain;
    CostKind cost = CostKind::Local;
    Optimizer optimizer = Optimizer::Sgd;
    double step_size = 0.05;
    std::optional<std::size_t> shots = 100;  // empty = exact gradients
    std::size_t iterations = 200;
    std::size_t n_seeds = 10;
    double lambda_reg = 1e-3;
    std::uint64_t base_seed = kDefaultBaseSeed;
    std::size_t threads = 1;

    /// Defaults for the optimizer: SGD eta = 0.05, QNG eta = 0.02; both use
    /// 100 shots, 200 iterations, 10 seeds and lambda_reg = 1e-3.
    static TrajectoryConfig defaults(Optimizer opt);
};

struct TrajectoryRecord {
    std::size_t iteration = 0;
    double mean_cost = 0.0;
    double std_cost = 0.0;  // sample standard deviation over seeds
};

struct Trajectory {
    TrajectoryConfig config;
    std::vector<TrajectoryRecord> records;        // iterations + 1 rows
    std::vector<std::vector<double>> seed_costs;  // [seed][iteration], exact costs
    std::size_t shifted_evaluations_per_iteration = 0;  // 2M gradient evaluations
    std::size_t shots_per_iteration = 0;  // per seed, summed over evaluations and measurement groups
};

/// Per seed: theta0 from the ensemble initialization stream, then `iterations`
/// updates with a parameter-shift gradient (fresh shots per shifted
/// evaluation). QNG preconditions with the exact metric, which uses no shots.
/// The recorded cost is always the exact one.
Trajectory run_trajectory(const TrajectoryConfig& config);

}  // namespace plateau
