#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "plateau/circuit.hpp"
#include "plateau/derivatives.hpp"
#include "plateau/observable.hpp"

namespace plateau {

inline constexpr double kDefaultSpectralEpsilon = 1e-4;

struct SpectralSummary {
    std::vector<double> eigenvalues;  // ascending
    double lambda_rms = 0.0;          // sqrt(mean lambda^2)
    double deg_eps = 0.0;             // fraction with |lambda| < epsilon
    double epsilon = kDefaultSpectralEpsilon;
};

/// Summary statistics of an arbitrary eigenvalue list.
SpectralSummary summarize_eigenvalues(std::vector<double> eigenvalues, double epsilon);

/// Eigendecomposition of a symmetric matrix followed by the summary. Throws if
/// the solver fails or the spectrum disagrees with the Frobenius norm / trace.
SpectralSummary symmetric_spectrum(const Eigen::MatrixXd& h, double epsilon);

/// Exact full Hessian at theta, then its spectrum.
SpectralSummary hessian_spectrum(const Circuit& circuit, const Observable& obs, const ParamPoint& theta,
                                 double epsilon = kDefaultSpectralEpsilon, std::size_t cap = kDefaultHessianCap,
                                 std::size_t threads = 1);

struct SpectralConsistency {
    double frobenius_gap = 0.0;  // |sum lambda^2 - ||H||_F^2|
    double trace_gap = 0.0;      // |sum lambda - tr H|
};

SpectralConsistency spectral_consistency(const Eigen::MatrixXd& h, std::span<const double> eigenvalues);

/// Pools the eigenvalues of several summaries (same epsilon) into one.
SpectralSummary pool_spectra(std::span<const SpectralSummary> parts);

}  // namespace plateau
