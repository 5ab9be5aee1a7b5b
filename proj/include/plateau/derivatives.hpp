#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "plateau/circuit.hpp"
#include "plateau/observable.hpp"
#include "plateau/shift_rule.hpp"
#include "plateau/statevector.hpp"

namespace plateau {

class Rng;

enum class EstimateMode { Exact, Shots };

/// One Hessian entry together with the shifted costs it was built from.
/// value == sum_s weight_s * shifted_costs[s] holds exactly.
struct HessianEstimate {
    std::size_t j = 0;
    std::size_t k = 0;
    double value = 0.0;
    EstimateMode mode = EstimateMode::Exact;
    std::size_t shots = 0;
    std::vector<double> shifted_costs;
};

/// Full-Hessian assembly refuses circuits with more parameters than this.
inline constexpr std::size_t kDefaultHessianCap = 256;

/// C(theta) = <psi(theta)|O|psi(theta)>.
double cost(const Circuit& circuit, const Observable& obs, const ParamPoint& theta);
double cost(const Circuit& circuit, const Observable& obs, const ParamPoint& theta, Statevector& scratch);

/// Flags the parameters inside the backward lightcone of the observable's
/// support; the cost is independent of every other parameter.
std::vector<bool> influencing_parameters(const Circuit& circuit, const Observable& obs);

/// Exact C(theta (+) s) for every entry of the rule, in rule order. Shift
/// components on parameters outside the lightcone are dropped, so derivatives
/// along them come out exactly zero rather than as rounding residue.
std::vector<double> shifted_costs(const Circuit& circuit, const Observable& obs, const ParamPoint& theta,
                                  const ShiftRule& rule, Statevector& scratch);

double grad_entry_exact(const Circuit& circuit, const Observable& obs, const ParamPoint& theta, std::size_t j);

/// Exact gradient via the two-shift rule for every parameter.
Eigen::VectorXd gradient_exact(const Circuit& circuit, const Observable& obs, const ParamPoint& theta);

/// Parameter-shift gradient with `shots` fresh samples per shifted evaluation.
Eigen::VectorXd gradient_shots(const Circuit& circuit, const Observable& obs, const ParamPoint& theta,
                               std::size_t shots, Rng& rng);

HessianEstimate hessian_entry_exact(const Circuit& circuit, const Observable& obs, const ParamPoint& theta,
                                    std::size_t j, std::size_t k);

/// Finite-shot estimate of C(theta): see sample_expectation for the grouping.
double sample_cost(const Circuit& circuit, const Observable& obs, const ParamPoint& theta, std::size_t shots,
                   Rng& rng);

/// Finite-shot parameter-shift Hessian entry; every shifted evaluation gets
/// its own `shots` samples.
HessianEstimate hessian_entry_shots(const Circuit& circuit, const Observable& obs, const ParamPoint& theta,
                                    std::size_t j, std::size_t k, std::size_t shots, Rng& rng);

/// Exact conditional shot variance of hessian_entry_shots at theta:
/// sum_s w_s^2 Var_sh(C_hat(theta (+) s)).
double hessian_entry_shot_variance(const Circuit& circuit, const Observable& obs, const ParamPoint& theta,
                                   std::size_t j, std::size_t k, std::size_t shots);

/// Symmetric M x M Hessian from the exact shift rules. Entries (j,k) and (k,j)
/// share one evaluation, so the result is exactly symmetric.
Eigen::MatrixXd full_hessian_exact(const Circuit& circuit, const Observable& obs, const ParamPoint& theta,
                                   std::size_t cap = kDefaultHessianCap, std::size_t threads = 1);

}  // namespace plateau
