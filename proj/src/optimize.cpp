#include "plateau/optimize.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "plateau/derivatives.hpp"
#include "plateau/execute.hpp"
#include "plateau/parallel.hpp"
#include "plateau/rng.hpp"
#include "plateau/stats.hpp"

namespace plateau {

std::string to_string(Optimizer opt) { return opt == Optimizer::Sgd ? "sgd" : "qng"; }

Optimizer parse_optimizer(const std::string& name) {
    if (name == "sgd") return Optimizer::Sgd;
    if (name == "qng") return Optimizer::Qng;
    throw std::invalid_argument("unknown optimizer '" + name + "' (expected sgd or qng)");
}

Eigen::MatrixXd qng_metric(const Circuit& circuit, const ParamPoint& theta, double lambda_reg) {
    if (!(lambda_reg > 0.0)) throw std::invalid_argument("metric regularization must be positive");
    const std::size_t m = circuit.param_count;
    const Statevector psi = prepare_state(circuit, theta);
    const auto d = derivative_states(circuit, theta);
    std::vector<cplx> overlap(m);  // <psi|d_j psi>
    for (std::size_t j = 0; j < m; ++j) overlap[j] = inner_product(psi, d[j]);
    const auto mi = static_cast<Eigen::Index>(m);
    Eigen::MatrixXd f(mi, mi);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            const double v = inner_product(d[i], d[j]).real() - (std::conj(overlap[i]) * overlap[j]).real();
            f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            f(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
    }
    f.diagonal().array() += lambda_reg;
    return f;
}

Eigen::VectorXd natural_gradient_direction(const Eigen::MatrixXd& metric, const Eigen::VectorXd& gradient) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(metric);
    if (ldlt.info() != Eigen::Success) throw std::runtime_error("metric factorization failed");
    return ldlt.solve(gradient);
}

TrajectoryConfig TrajectoryConfig::defaults(Optimizer opt) {
    TrajectoryConfig c;
    c.optimizer = opt;
    c.step_size = opt == Optimizer::Sgd ? 0.05 : 0.02;
    return c;
}

namespace {

std::size_t measurement_groups(const Observable& obs) {
    std::set<MeasurementBasis> groups;
    for (const auto& t : obs.terms()) {
        if (!t.is_identity()) groups.insert(t.basis());
    }
    return groups.size();
}

}  // namespace

Trajectory run_trajectory(const TrajectoryConfig& config) {
    if (config.n_seeds < 1) throw std::invalid_argument("trajectory needs at least one seed");
    if (config.shots && *config.shots == 0) throw std::invalid_argument("shot count must be at least 1");
    if (config.step_size < 0.0) throw std::invalid_argument("step size must be nonnegative");
    const Circuit circuit = build_hardware_efficient(config.n, config.depth, config.family);
    const Observable obs = make_cost_observable(config.cost, config.n);
    const std::size_t m = circuit.param_count;

    Trajectory traj;
    traj.config = config;
    traj.shifted_evaluations_per_iteration = 2 * m;
    traj.shots_per_iteration = config.shots ? 2 * m * *config.shots * measurement_groups(obs) : 0;
    traj.seed_costs.assign(config.n_seeds, std::vector<double>(config.iterations + 1));

    parallel_for(config.n_seeds, config.threads, [&](std::size_t seed) {
        ParamPoint theta = draw_initialization(m, config.base_seed, seed);
        Rng rng(derive_seed(config.base_seed, {static_cast<std::uint64_t>(Stream::Trajectory), seed}));
        Statevector scratch(circuit.n_qubits);
        auto& costs = traj.seed_costs[seed];
        costs[0] = cost(circuit, obs, theta, scratch);
        for (std::size_t it = 1; it <= config.iterations; ++it) {
            const Eigen::VectorXd g = config.shots ? gradient_shots(circuit, obs, theta, *config.shots, rng)
                                                   : gradient_exact(circuit, obs, theta);
            const Eigen::VectorXd step = config.optimizer == Optimizer::Sgd
                                             ? g
                                             : natural_gradient_direction(qng_metric(circuit, theta, config.lambda_reg), g);
            for (std::size_t j = 0; j < m; ++j) {
                theta[j] = wrap_angle(theta[j] - config.step_size * step[static_cast<Eigen::Index>(j)]);
            }
            costs[it] = cost(circuit, obs, theta, scratch);
        }
    });

    traj.records.resize(config.iterations + 1);
    std::vector<double> column(config.n_seeds);
    for (std::size_t it = 0; it <= config.iterations; ++it) {
        for (std::size_t s = 0; s < config.n_seeds; ++s) column[s] = traj.seed_costs[s][it];
        auto& rec = traj.records[it];
        rec.iteration = it;
        rec.mean_cost = mean(column);
        rec.std_cost = config.n_seeds > 1 ? std::sqrt(sample_variance(column)) : 0.0;
    }
    return traj;
}

}  // namespace plateau
