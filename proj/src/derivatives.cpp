#include "plateau/derivatives.hpp"

#include <set>
#include <stdexcept>
#include <string>

#include "plateau/execute.hpp"
#include "plateau/parallel.hpp"
#include "plateau/rng.hpp"

namespace plateau {

namespace {

void check_index(const Circuit& circuit, std::size_t j) {
    if (j >= circuit.param_count) {
        throw std::out_of_range("parameter index " + std::to_string(j) + " out of range (M = " +
                                std::to_string(circuit.param_count) + ")");
    }
}

void check_observable(const Circuit& circuit, const Observable& obs) {
    if (obs.n_qubits() != circuit.n_qubits) throw std::invalid_argument("observable / circuit qubit mismatch");
}

double combine(const ShiftRule& rule, const std::vector<double>& values) {
    double h = 0.0;
    for (std::size_t s = 0; s < values.size(); ++s) h += rule.entries()[s].weight * values[s];
    return h;
}

}  // namespace

double cost(const Circuit& circuit, const Observable& obs, const ParamPoint& theta, Statevector& scratch) {
    check_observable(circuit, obs);
    prepare_state(circuit, theta, scratch);
    return expectation(scratch, obs);
}

double cost(const Circuit& circuit, const Observable& obs, const ParamPoint& theta) {
    Statevector scratch(circuit.n_qubits);
    return cost(circuit, obs, theta, scratch);
}

std::vector<bool> influencing_parameters(const Circuit& circuit, const Observable& obs) {
    check_observable(circuit, obs);
    std::set<std::size_t> support;
    for (const auto& t : obs.terms()) {
        for (const auto& [q, p] : t.paulis) support.insert(q);
    }
    std::vector<bool> flags(circuit.param_count, false);
    if (support.empty()) return flags;
    const std::vector<std::size_t> qubits(support.begin(), support.end());
    for (std::size_t p : backward_lightcone(circuit, qubits).params) flags[p] = true;
    return flags;
}

namespace {

std::vector<double> shifted_costs_within(const Circuit& circuit, const Observable& obs, const ParamPoint& theta,
                                         const ShiftRule& rule, const std::vector<bool>& influencing,
                                         Statevector& scratch) {
    std::vector<double> out;
    out.reserve(rule.size());
    for (const auto& e : rule.entries()) {
        ShiftVector effective;
        for (const auto& component : e.shift) {
            if (influencing.at(component.first)) effective.push_back(component);
        }
        out.push_back(cost(circuit, obs, theta.shifted(effective), scratch));
    }
    return out;
}

}  // namespace

std::vector<double> shifted_costs(const Circuit& circuit, const Observable& obs, const ParamPoint& theta,
                                  const ShiftRule& rule, Statevector& scratch) {
    return shifted_costs_within(circuit, obs, theta, rule, influencing_parameters(circuit, obs), scratch);
}

double grad_entry_exact(const Circuit& circuit, const Observable& obs, const ParamPoint& theta, std::size_t j) {
    check_index(circuit, j);
    Statevector scratch(circuit.n_qubits);
    const auto rule = ShiftRule::gradient(j);
    return combine(rule, shifted_costs(circuit, obs, theta, rule, scratch));
}

Eigen::VectorXd gradient_exact(const Circuit& circuit, const Observable& obs, const ParamPoint& theta) {
    Eigen::VectorXd g(static_cast<Eigen::Index>(circuit.param_count));
    Statevector scratch(circuit.n_qubits);
    for (std::size_t j = 0; j < circuit.param_count; ++j) {
        const auto rule = ShiftRule::gradient(j);
        g[static_cast<Eigen::Index>(j)] = combine(rule, shifted_costs(circuit, obs, theta, rule, scratch));
    }
    return g;
}

Eigen::VectorXd gradient_shots(const Circuit& circuit, const Observable& obs, const ParamPoint& theta,
                               std::size_t shots, Rng& rng) {
    Eigen::VectorXd g(static_cast<Eigen::Index>(circuit.param_count));
    Statevector scratch(circuit.n_qubits);
    for (std::size_t j = 0; j < circuit.param_count; ++j) {
        const auto rule = ShiftRule::gradient(j);
        double v = 0.0;
        for (const auto& e : rule.entries()) {
            prepare_state(circuit, theta.shifted(e.shift), scratch);
            v += e.weight * sample_expectation(scratch, obs, shots, rng);
        }
        g[static_cast<Eigen::Index>(j)] = v;
    }
    return g;
}

HessianEstimate hessian_entry_exact(const Circuit& circuit, const Observable& obs, const ParamPoint& theta,
                                    std::size_t j, std::size_t k) {
    check_index(circuit, j);
    check_index(circuit, k);
    // Order the pair so (j,k) and (k,j) evaluate the same shift list.
    const auto rule = ShiftRule::hessian(std::min(j, k), std::max(j, k));
    Statevector scratch(circuit.n_qubits);
    HessianEstimate est;
    est.j = j;
    est.k = k;
    est.mode = EstimateMode::Exact;
    est.shifted_costs = shifted_costs(circuit, obs, theta, rule, scratch);
    est.value = combine(rule, est.shifted_costs);
    return est;
}

double sample_cost(const Circuit& circuit, const Observable& obs, const ParamPoint& theta, std::size_t shots,
                   Rng& rng) {
    if (shots == 0) throw std::invalid_argument("shot count must be at least 1");
    check_observable(circuit, obs);
    const Statevector s = prepare_state(circuit, theta);
    return sample_expectation(s, obs, shots, rng);
}

HessianEstimate hessian_entry_shots(const Circuit& circuit, const Observable& obs, const ParamPoint& theta,
                                    std::size_t j, std::size_t k, std::size_t shots, Rng& rng) {
    check_index(circuit, j);
    check_index(circuit, k);
    if (shots == 0) throw std::invalid_argument("shot count must be at least 1");
    check_observable(circuit, obs);
    const auto rule = ShiftRule::hessian(std::min(j, k), std::max(j, k));
    Statevector scratch(circuit.n_qubits);
    HessianEstimate est;
    est.j = j;
    est.k = k;
    est.mode = EstimateMode::Shots;
    est.shots = shots;
    for (const auto& e : rule.entries()) {
        prepare_state(circuit, theta.shifted(e.shift), scratch);
        est.shifted_costs.push_back(sample_expectation(scratch, obs, shots, rng));
    }
    est.value = combine(rule, est.shifted_costs);
    return est;
}

double hessian_entry_shot_variance(const Circuit& circuit, const Observable& obs, const ParamPoint& theta,
                                   std::size_t j, std::size_t k, std::size_t shots) {
    check_index(circuit, j);
    check_index(circuit, k);
    check_observable(circuit, obs);
    const auto rule = ShiftRule::hessian(std::min(j, k), std::max(j, k));
    Statevector scratch(circuit.n_qubits);
    double v = 0.0;
    for (const auto& e : rule.entries()) {
        prepare_state(circuit, theta.shifted(e.shift), scratch);
        v += e.weight * e.weight * shot_variance(scratch, obs, shots);
    }
    return v;
}

Eigen::MatrixXd full_hessian_exact(const Circuit& circuit, const Observable& obs, const ParamPoint& theta,
                                   std::size_t cap, std::size_t threads) {
    const std::size_t m = circuit.param_count;
    if (m > cap) {
        throw std::invalid_argument("full Hessian needs " + std::to_string(m) + " parameters, cap is " +
                                    std::to_string(cap));
    }
    check_observable(circuit, obs);
    if (theta.size() != m) throw std::invalid_argument("parameter point size mismatch");
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    const auto influencing = influencing_parameters(circuit, obs);
    // Row j owns the upper-triangle entries (j, k >= j); rows and columns of
    // parameters outside the lightcone stay exactly zero.
    parallel_for(m, threads, [&](std::size_t j) {
        if (!influencing[j]) return;
        Statevector scratch(circuit.n_qubits);
        for (std::size_t k = j; k < m; ++k) {
            if (!influencing[k]) continue;
            const auto rule = ShiftRule::hessian(j, k);
            const double v = combine(rule, shifted_costs_within(circuit, obs, theta, rule, influencing, scratch));
            h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = v;
        }
    });
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = j + 1; k < m; ++k) {
            h(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
                h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
        }
    }
    return h;
}

}  // namespace plateau
