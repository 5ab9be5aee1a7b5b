#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "plateau/circuit.hpp"
#include "plateau/fit.hpp"
#include "plateau/graph.hpp"
#include "plateau/observable.hpp"
#include "plateau/shift_rule.hpp"

namespace plateau {

/// Graph on the terms of a term-wise local observable; two terms are joined
/// when their supports lie within `threshold` = k + 2rL of each other.
struct DependencyGraph {
    std::vector<std::vector<std::size_t>> adjacency;
    std::size_t threshold = 0;
    std::size_t max_degree = 0;
};

DependencyGraph build_dependency_graph(const Observable& obs, const InteractionGraph& graph, std::size_t r,
                                       std::size_t depth);

/// Spatial dimension used by the polynomial-growth form: 1 for chains and
/// rings, 2 for grids, none for the complete graph.
std::optional<std::size_t> growth_dimension(GraphFamily family);

struct LocalBound {
    std::size_t radius = 0;       // k + 2rL
    std::size_t growth = 0;       // V_G(radius)
    double bound = 0.0;           // c_loc * V_G(radius) / n
    std::optional<double> polynomial_form;  // c_loc * radius^D / n
};

LocalBound local_variance_bound(std::size_t n, std::size_t k, std::size_t r, std::size_t depth,
                                const InteractionGraph& graph, double c_loc);

/// (max_degree + 1) * per_term_var_bound / n.
double dependency_variance_bound(const DependencyGraph& dep, double per_term_var_bound, std::size_t n);

struct CovarianceCutoff {
    std::optional<std::size_t> distance;  // nullopt = disconnected
    bool beyond_cutoff = false;            // distance > 2 r L
    bool parameter_sets_disjoint = false;  // from the exact backward lightcones
    double covariance = 0.0;
    double standard_error = 0.0;
};

/// Covariance of the two single-term costs over a shared random-initialization
/// ensemble, plus the structural lightcone comparison.
CovarianceCutoff covariance_cutoff_check(const Circuit& circuit, const PauliTerm& a, const PauliTerm& b,
                                         std::size_t n_seeds, std::uint64_t base_seed, std::size_t threads = 1);

/// (sum_s |w_s|)^2 * v: bounds the variance of the rule's linear combination
/// when every shifted cost has variance at most v.
double transference_bound(double v, const ShiftRule& rule);

struct HaarOracle {
    double formula = 0.0;
    double monte_carlo = 0.0;
    double standard_error = 0.0;
};

inline constexpr std::size_t kHaarMaxQubits = 10;

/// Variance of <O> over Haar-random pure states: closed form from Pauli trace
/// algebra and a Monte Carlo estimate from normalized complex Gaussian vectors.
HaarOracle haar_variance_oracle(const Observable& obs, std::size_t n_samples, std::uint64_t seed);

/// Closed form only: (Tr O^2 - (Tr O)^2 / d) / (d (d + 1)).
double haar_variance_formula(const Observable& obs);

struct NormScaleBounds {
    double frobenius_sq = 0.0;  // M^2 (v + mu^2)
    double spectral = 0.0;      // M sqrt(v + mu^2)
};

NormScaleBounds norm_scale_bounds(double entry_var_bound, double entry_mean_bound, std::size_t m);

/// Smallest N with c_S sigma^2 / N <= eta * var; nullopt when var <= 0 (the
/// entry cannot be resolved at any budget).
/// Throws std::overflow_error when N does not fit in 64 bits.
std::optional<std::size_t> resolution_shots(double var, const ShiftRule& rule, double sigma_sq, double eta);
/// Same requirement as a real number, for budgets beyond integer range.
std::optional<double> resolution_shots_real(double var, const ShiftRule& rule, double sigma_sq, double eta);

/// Smallest N with a + b / N <= eps^2 under a two-term model; nullopt when the
/// floor a already reaches eps^2.
std::optional<std::size_t> absolute_shots(double epsilon, double a, double b);
std::optional<std::size_t> absolute_shots(double epsilon, const FitResult& fit);
/// Noise-only model: a = 0, b = c_S sigma^2.
std::optional<std::size_t> absolute_shots(double epsilon, const ShiftRule& rule, double sigma_sq);

enum class Regime { Global, Local };

std::string to_string(Regime regime);

struct BoundInputs {
    std::size_t n = 0;
    std::size_t k = 1;
    std::size_t r = 2;
    std::size_t depth = 1;
    GraphFamily family = GraphFamily::Chain;
    double eta = 1.0;
    double c_loc = 1.0;
    double sigma_sq = 1.0;
    bool diagonal_entry = true;
};

struct BoundReport {
    Regime regime = Regime::Local;
    BoundInputs inputs;
    std::size_t growth_value = 0;
    std::size_t dep_max_degree = 0;
    double variance_bound = 0.0;
    double transference = 0.0;
    std::optional<double> empirical_variance;
    // Shots needed to resolve the empirical variance, when attached.
    std::optional<std::size_t> resolution_shots;
    bool resolution_overflow = false;  // requirement exists but exceeds 64-bit range
    // Shots needed if the variance sat exactly at the bound: a floor on the true requirement.
    std::optional<double> resolution_shots_at_bound;
    std::optional<bool> sound;  // empirical <= bound, when attached
};

/// LOCAL: c_loc V_G(k + 2rL) / n with the dependency degree of the averaged
/// Z observable. GLOBAL: the transferred 2-design cost bound
/// (sum|w|)^2 / (2^n + 1), valid under the design assumption only.
BoundReport make_bound_report(Regime regime, const BoundInputs& inputs,
                              std::optional<double> empirical_variance = std::nullopt);

nlohmann::json to_json(const BoundReport& report);

}  // namespace plateau
