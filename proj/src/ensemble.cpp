#include "plateau/ensemble.hpp"

#include <stdexcept>

#include "plateau/derivatives.hpp"
#include "plateau/execute.hpp"
#include "plateau/parallel.hpp"
#include "plateau/rng.hpp"

namespace plateau {

std::string to_string(CostKind kind) {
    switch (kind) {
        case CostKind::Global: return "global";
        case CostKind::Local: return "local";
        case CostKind::Tfim: return "tfim";
    }
    return "unknown";
}

CostKind parse_cost_kind(const std::string& name) {
    if (name == "global") return CostKind::Global;
    if (name == "local") return CostKind::Local;
    if (name == "tfim") return CostKind::Tfim;
    throw std::invalid_argument("unknown cost kind '" + name + "' (expected global, local or tfim)");
}

Observable make_cost_observable(CostKind kind, std::size_t n) {
    switch (kind) {
        case CostKind::Global: return make_global_parity(n);
        case CostKind::Local: return make_local_z_average(n);
        case CostKind::Tfim: return make_tfim_density(n, 1.0, 1.0);
    }
    throw std::invalid_argument("unknown cost kind");
}

std::vector<double> EnsembleStats::values() const {
    std::vector<double> v;
    v.reserve(samples.size());
    for (const auto& s : samples) v.push_back(s.value);
    return v;
}

std::vector<double> EnsembleStats::exact_values() const {
    std::vector<double> v;
    v.reserve(samples.size());
    for (const auto& s : samples) v.push_back(s.exact_value);
    return v;
}

Eigen::MatrixXd EnsembleStats::shifted_cost_matrix() const {
    const auto rows = static_cast<Eigen::Index>(samples.size());
    const auto cols = static_cast<Eigen::Index>(rule.size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& c = samples[static_cast<std::size_t>(i)].shifted_costs;
        if (c.size() != rule.size()) throw std::logic_error("sample is missing retained shifted costs");
        for (Eigen::Index s = 0; s < cols; ++s) m(i, s) = c[static_cast<std::size_t>(s)];
    }
    return m;
}

std::vector<double> EnsembleStats::shifted_cost_variances() const {
    std::vector<double> v;
    for (Eigen::Index s = 0; s < sigma.rows(); ++s) v.push_back(sigma(s, s));
    return v;
}

double EnsembleStats::cost_variance() const {
    const auto v = shifted_cost_variances();
    return v.empty() ? 0.0 : mean(v);
}

double EnsembleStats::mean_shot_variance() const {
    if (samples.empty()) return 0.0;
    double s = 0.0;
    for (const auto& x : samples) s += x.shot_variance;
    return s / static_cast<double>(samples.size());
}

ParamPoint draw_initialization(std::size_t m, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> theta(m);
    for (auto& t : theta) t = kTwoPi * rng.uniform();
    return ParamPoint(std::move(theta));
}

ParamPoint draw_initialization(std::size_t m, std::uint64_t base_seed, std::size_t index) {
    return draw_initialization(m, derive_seed(base_seed, {static_cast<std::uint64_t>(Stream::Initialization), index}));
}

EnsembleStats run_ensemble(const EnsembleSpec& spec) {
    if (spec.n_seeds < 2) throw std::invalid_argument("an ensemble needs at least 2 seeds");
    if (spec.shots && *spec.shots == 0) throw std::invalid_argument("shot count must be at least 1");
    const Circuit circuit = build_hardware_efficient(spec.n, spec.depth, spec.family);
    if (spec.j >= circuit.param_count || spec.k >= circuit.param_count) {
        throw std::out_of_range("entry (" + std::to_string(spec.j) + "," + std::to_string(spec.k) +
                                ") outside M = " + std::to_string(circuit.param_count));
    }
    const Observable obs = make_cost_observable(spec.cost, spec.n);
    const auto rule = ShiftRule::hessian(std::min(spec.j, spec.k), std::max(spec.j, spec.k));

    EnsembleStats stats;
    stats.spec = spec;
    stats.rule = rule;
    stats.samples.resize(spec.n_seeds);

    parallel_for(spec.n_seeds, spec.threads, [&](std::size_t i) {
        EnsembleSample& sample = stats.samples[i];
        sample.theta = draw_initialization(circuit.param_count, spec.base_seed, i);
        Statevector scratch(circuit.n_qubits);
        if (!spec.shots) {
            sample.shifted_costs = shifted_costs(circuit, obs, sample.theta, rule, scratch);
        } else {
            // Keyed on the shot count too, so different budgets see independent noise.
            Rng rng(derive_seed(spec.base_seed, {static_cast<std::uint64_t>(Stream::Shots), i, *spec.shots}));
            for (const auto& e : rule.entries()) {
                prepare_state(circuit, sample.theta.shifted(e.shift), scratch);
                const double exact = expectation(scratch, obs);
                sample.shifted_costs.push_back(sample_expectation(scratch, obs, *spec.shots, rng));
                sample.exact_value += e.weight * exact;
                sample.shot_variance += e.weight * e.weight * shot_variance(scratch, obs, *spec.shots);
            }
        }
        for (std::size_t s = 0; s < rule.size(); ++s) sample.value += rule.entries()[s].weight * sample.shifted_costs[s];
        if (!spec.shots) sample.exact_value = sample.value;
    });

    const auto values = stats.values();
    stats.var_hat = sample_variance(values);
    stats.ci95 = bootstrap_ci(values, spec.bootstrap_resamples, 0.95,
                              derive_seed(spec.base_seed, {static_cast<std::uint64_t>(Stream::Bootstrap)}));
    stats.sigma = sample_covariance_matrix(stats.shifted_cost_matrix());
    return stats;
}

double covariance_quadratic_check(const EnsembleStats& stats, const ShiftRule& rule) {
    if (stats.samples.size() < 2) throw std::invalid_argument("quadratic check needs at least 2 samples");
    const Eigen::MatrixXd sigma = sample_covariance_matrix(stats.shifted_cost_matrix());
    if (static_cast<std::size_t>(sigma.rows()) != rule.size()) {
        throw std::invalid_argument("shift rule does not match the retained shifted costs");
    }
    const auto w_vec = rule.weights();
    const Eigen::Map<const Eigen::VectorXd> w(w_vec.data(), static_cast<Eigen::Index>(w_vec.size()));
    std::vector<double> h;
    h.reserve(stats.samples.size());
    for (const auto& s : stats.samples) {
        double v = 0.0;
        for (std::size_t i = 0; i < w_vec.size(); ++i) v += w_vec[i] * s.shifted_costs[i];
        h.push_back(v);
    }
    return std::abs(sample_variance(h) - w.dot(sigma * w));
}

double diagonal_variance_expansion(const Eigen::MatrixXd& sigma) {
    if (sigma.rows() != 3 || sigma.cols() != 3) throw std::invalid_argument("diagonal expansion needs a 3x3 matrix");
    // w = (1/4, -1/2, 1/4) over shifts (+pi, 0, -pi).
    return sigma(0, 0) / 16.0 + sigma(1, 1) / 4.0 + sigma(2, 2) / 16.0 - sigma(0, 1) / 4.0 + sigma(0, 2) / 8.0 -
           sigma(1, 2) / 4.0;
}

double off_diagonal_variance_expansion(const Eigen::MatrixXd& sigma) {
    if (sigma.rows() != 4 || sigma.cols() != 4) {
        throw std::invalid_argument("off-diagonal expansion needs a 4x4 matrix");
    }
    constexpr double w[4] = {0.25, -0.25, -0.25, 0.25};
    double v = 0.0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) v += w[a] * w[b] * sigma(a, b);
    }
    return v;
}

std::vector<double> cost_samples(const Circuit& circuit, const Observable& obs, std::size_t n_seeds,
                                 std::uint64_t base_seed, const ShiftVector& shift, std::size_t threads) {
    std::vector<double> out(n_seeds);
    parallel_for(n_seeds, threads, [&](std::size_t i) {
        const ParamPoint theta = draw_initialization(circuit.param_count, base_seed, i);
        out[i] = cost(circuit, obs, shift.empty() ? theta : theta.shifted(shift));
    });
    return out;
}

double shift_invariance_check(const Circuit& circuit, const Observable& obs, const ShiftVector& shift,
                              std::size_t n_seeds, std::uint64_t base_seed, std::size_t threads) {
    const auto stream = static_cast<std::uint64_t>(Stream::Auxiliary);
    const auto plain = cost_samples(circuit, obs, n_seeds, derive_seed(base_seed, {stream, 0}), {}, threads);
    const auto moved = cost_samples(circuit, obs, n_seeds, derive_seed(base_seed, {stream, 1}), shift, threads);
    return ks_two_sample_pvalue(plain, moved);
}

}  // namespace plateau
