#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "plateau/circuit.hpp"
#include "plateau/observable.hpp"
#include "plateau/shift_rule.hpp"
#include "plateau/stats.hpp"

namespace plateau {

inline constexpr std::uint64_t kDefaultBaseSeed = 20240917;

/// Cost functions the experiments sweep over. Tfim is the J = h = 1 energy density.
enum class CostKind { Global, Local, Tfim };

std::string to_string(CostKind kind);
CostKind parse_cost_kind(const std::string& name);
Observable make_cost_observable(CostKind kind, std::size_t n);

struct EnsembleSpec {
    std::size_t n = 2;
    std::size_t depth = 4;
    GraphFamily family = GraphFamily::Chain;
    CostKind cost = CostKind::Global;
    std::size_t j = 0;
    std::size_t k = 0;
    std::size_t n_seeds = 200;
    std::uint64_t base_seed = kDefaultBaseSeed;
    std::optional<std::size_t> shots;  // empty = exact
    std::size_t threads = 1;
    std::size_t bootstrap_resamples = kDefaultBootstrapResamples;
};

struct EnsembleSample {
    ParamPoint theta;
    std::vector<double> shifted_costs;  // estimates in shot mode, exact otherwise
    double value = 0.0;                 // sum_s w_s shifted_costs[s]
    // Shot mode only: the noiseless entry and its exact conditional shot variance.
    double exact_value = 0.0;
    double shot_variance = 0.0;
};

struct EnsembleStats {
    EnsembleSpec spec;
    ShiftRule rule = ShiftRule::diagonal(0);
    std::vector<EnsembleSample> samples;
    double var_hat = 0.0;
    ConfidenceInterval ci95;
    Eigen::MatrixXd sigma;  // covariance of shifted costs across seeds

    std::vector<double> values() const;
    std::vector<double> exact_values() const;
    /// Column s holds the shifted cost at rule entry s for every seed.
    Eigen::MatrixXd shifted_cost_matrix() const;
    /// Per-shift sample variances of the cost (the diagonal of sigma).
    std::vector<double> shifted_cost_variances() const;
    /// Mean of the per-shift cost variances: a cost-level variance estimate.
    double cost_variance() const;
    double mean_shot_variance() const;
};

/// M i.i.d. uniforms on [0, 2pi), deterministic in `seed`.
ParamPoint draw_initialization(std::size_t m, std::uint64_t seed);

/// Initialization for seed index `index` of an ensemble with `base_seed`.
ParamPoint draw_initialization(std::size_t m, std::uint64_t base_seed, std::size_t index);

/// Evaluates H_jk for every seed (exactly or with fresh shots per shift),
/// keeping the shifted costs, then aggregates variance, Sigma and a bootstrap CI.
/// Seeds are independent tasks; aggregation runs in seed order.
EnsembleStats run_ensemble(const EnsembleSpec& spec);

/// |sampleVar(H) - w^T Sigma w| over the retained shifted costs.
double covariance_quadratic_check(const EnsembleStats& stats, const ShiftRule& rule);

/// Diagonal-rule variance written out as its six variance / covariance terms.
double diagonal_variance_expansion(const Eigen::MatrixXd& sigma);

/// Off-diagonal-rule variance as the explicit 16-term double sum.
double off_diagonal_variance_expansion(const Eigen::MatrixXd& sigma);

/// Two-sample KS p-value comparing C(theta) and C(theta (+) s) with theta drawn
/// from independent streams for the two samples.
double shift_invariance_check(const Circuit& circuit, const Observable& obs, const ShiftVector& shift,
                              std::size_t n_seeds, std::uint64_t base_seed, std::size_t threads = 1);

/// C(theta) over independent initializations, in seed order.
std::vector<double> cost_samples(const Circuit& circuit, const Observable& obs, std::size_t n_seeds,
                                 std::uint64_t base_seed, const ShiftVector& shift = {},
                                 std::size_t threads = 1);

}  // namespace plateau
