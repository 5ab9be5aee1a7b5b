#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace plateau {

inline constexpr std::size_t kDefaultBootstrapResamples = 2000;

double mean(std::span<const double> values);

/// Unbiased (n-1) sample variance.
double sample_variance(std::span<const double> values);

/// Unbiased sample covariance.
double sample_covariance(std::span<const double> x, std::span<const double> y);

/// Standard error of the sample covariance, from the spread of the centred
/// products (x_i - xbar)(y_i - ybar).
double covariance_standard_error(std::span<const double> x, std::span<const double> y);

/// Standard error of the sample variance (delta method on the fourth moment).
double variance_standard_error(std::span<const double> values);

/// Unbiased covariance matrix of column vectors: samples(i, a) is observation i
/// of variable a.
Eigen::MatrixXd sample_covariance_matrix(const Eigen::MatrixXd& samples);

struct ConfidenceInterval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Percentile bootstrap interval for the sample variance.
ConfidenceInterval bootstrap_ci(std::span<const double> values, std::size_t n_resamples, double level,
                                std::uint64_t seed);

/// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} e^{-2 k^2 lambda^2}.
double kolmogorov_survival(double lambda);

/// Two-sample Kolmogorov-Smirnov test; returns the asymptotic p-value.
double ks_two_sample_pvalue(std::span<const double> a, std::span<const double> b);

/// One-sample KS test against U(lo, hi); returns the asymptotic p-value.
double ks_uniform_pvalue(std::span<const double> values, double lo, double hi);

}  // namespace plateau
