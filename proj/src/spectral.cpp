#include "plateau/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace plateau {

SpectralSummary summarize_eigenvalues(std::vector<double> eigenvalues, double epsilon) {
    if (eigenvalues.empty()) throw std::invalid_argument("empty spectrum");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    std::sort(eigenvalues.begin(), eigenvalues.end());
    SpectralSummary s;
    s.epsilon = epsilon;
    double sq = 0.0;
    std::size_t small = 0;
    for (double l : eigenvalues) {
        sq += l * l;
        if (std::abs(l) < epsilon) ++small;
    }
    const double m = static_cast<double>(eigenvalues.size());
    s.lambda_rms = std::sqrt(sq / m);
    s.deg_eps = static_cast<double>(small) / m;
    s.eigenvalues = std::move(eigenvalues);
    return s;
}

SpectralConsistency spectral_consistency(const Eigen::MatrixXd& h, std::span<const double> eigenvalues) {
    double sq = 0.0;
    double sum = 0.0;
    for (double l : eigenvalues) {
        sq += l * l;
        sum += l;
    }
    return {std::abs(sq - h.squaredNorm()), std::abs(sum - h.trace())};
}

SpectralSummary symmetric_spectrum(const Eigen::MatrixXd& h, double epsilon) {
    if (h.rows() != h.cols() || h.rows() == 0) throw std::invalid_argument("spectrum needs a nonempty square matrix");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver failed to converge");
    const Eigen::VectorXd& ev = solver.eigenvalues();
    std::vector<double> values(ev.data(), ev.data() + ev.size());
    const auto gap = spectral_consistency(h, values);
    const double scale = std::max(1.0, h.squaredNorm());
    if (gap.frobenius_gap > 1e-8 * scale || gap.trace_gap > 1e-8 * std::max(1.0, h.cwiseAbs().sum())) {
        throw std::runtime_error("eigenvalues inconsistent with the matrix norm / trace");
    }
    return summarize_eigenvalues(std::move(values), epsilon);
}

SpectralSummary hessian_spectrum(const Circuit& circuit, const Observable& obs, const ParamPoint& theta,
                                 double epsilon, std::size_t cap, std::size_t threads) {
    return symmetric_spectrum(full_hessian_exact(circuit, obs, theta, cap, threads), epsilon);
}

SpectralSummary pool_spectra(std::span<const SpectralSummary> parts) {
    if (parts.empty()) throw std::invalid_argument("nothing to pool");
    std::vector<double> all;
    for (const auto& p : parts) {
        if (p.epsilon != parts.front().epsilon) throw std::invalid_argument("pooled spectra use different epsilons");
        all.insert(all.end(), p.eigenvalues.begin(), p.eigenvalues.end());
    }
    return summarize_eigenvalues(std::move(all), parts.front().epsilon);
}

}  // namespace plateau
