#include "plateau/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "plateau/rng.hpp"

namespace plateau {

namespace {

void require_at_least(std::size_t n, std::size_t min, const char* what) {
    if (n < min) throw std::invalid_argument(std::string(what) + " needs at least " + std::to_string(min) + " values");
}

// Linear-interpolated quantile of sorted data.
double quantile_sorted(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

// Constant data has zero spread; the rounded mean would otherwise leave residue.
bool is_constant(std::span<const double> values) {
    return std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); });
}

}  // namespace

double mean(std::span<const double> values) {
    require_at_least(values.size(), 1, "mean");
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
    require_at_least(values.size(), 2, "sample_variance");
    if (is_constant(values)) return 0.0;
    const double m = mean(values);
    double s = 0.0;
    for (double v : values) s += (v - m) * (v - m);
    return s / static_cast<double>(values.size() - 1);
}

double sample_covariance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("covariance inputs differ in length");
    require_at_least(x.size(), 2, "sample_covariance");
    if (is_constant(x) || is_constant(y)) return 0.0;
    const double mx = mean(x);
    const double my = mean(y);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
    return s / static_cast<double>(x.size() - 1);
}

double covariance_standard_error(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("covariance inputs differ in length");
    require_at_least(x.size(), 3, "covariance_standard_error");
    const double mx = mean(x);
    const double my = mean(y);
    std::vector<double> prod(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) prod[i] = (x[i] - mx) * (y[i] - my);
    return std::sqrt(sample_variance(prod) / static_cast<double>(x.size()));
}

double variance_standard_error(std::span<const double> values) {
    require_at_least(values.size(), 3, "variance_standard_error");
    const double m = mean(values);
    double m2 = 0.0;
    double m4 = 0.0;
    for (double v : values) {
        const double d2 = (v - m) * (v - m);
        m2 += d2;
        m4 += d2 * d2;
    }
    const double n = static_cast<double>(values.size());
    m2 /= n;
    m4 /= n;
    return std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
}

Eigen::MatrixXd sample_covariance_matrix(const Eigen::MatrixXd& samples) {
    require_at_least(static_cast<std::size_t>(samples.rows()), 2, "sample_covariance_matrix");
    const Eigen::RowVectorXd mu = samples.colwise().mean();
    const Eigen::MatrixXd centred = samples.rowwise() - mu;
    return (centred.transpose() * centred) / static_cast<double>(samples.rows() - 1);
}

ConfidenceInterval bootstrap_ci(std::span<const double> values, std::size_t n_resamples, double level,
                                std::uint64_t seed) {
    require_at_least(values.size(), 2, "bootstrap_ci");
    if (n_resamples == 0) throw std::invalid_argument("bootstrap needs at least one resample");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("bootstrap level must lie in (0, 1)");
    Rng rng(seed);
    const std::size_t n = values.size();
    std::vector<double> stats(n_resamples);
    std::vector<double> resample(n);
    for (auto& s : stats) {
        for (auto& r : resample) r = values[rng.index(n)];
        s = sample_variance(resample);
    }
    std::sort(stats.begin(), stats.end());
    const double tail = (1.0 - level) / 2.0;
    return {quantile_sorted(stats, tail), quantile_sorted(stats, 1.0 - tail)};
}

double kolmogorov_survival(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 0.2) return 1.0;  // series converges slowly; Q is 1 to double precision here
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_two_sample_pvalue(std::span<const double> a, std::span<const double> b) {
    require_at_least(a.size(), 1, "ks_two_sample_pvalue");
    require_at_least(b.size(), 1, "ks_two_sample_pvalue");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    const double en = std::sqrt(nx * ny / (nx + ny));
    return kolmogorov_survival((en + 0.12 + 0.11 / en) * d);
}

double ks_uniform_pvalue(std::span<const double> values, double lo, double hi) {
    require_at_least(values.size(), 1, "ks_uniform_pvalue");
    if (!(hi > lo)) throw std::invalid_argument("uniform range is empty");
    std::vector<double> x(values.begin(), values.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = std::clamp((x[i] - lo) / (hi - lo), 0.0, 1.0);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    const double en = std::sqrt(n);
    return kolmogorov_survival((en + 0.12 + 0.11 / en) * d);
}

}  // namespace plateau
