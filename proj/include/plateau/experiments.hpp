#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "plateau/ensemble.hpp"
#include "plateau/optimize.hpp"
#include "plateau/report.hpp"

namespace plateau {

/// Header shared by every ensemble-variance CSV.
std::vector<std::string> ensemble_csv_header();

/// The diagonal entry (j, j) and, when k != j, the off-diagonal entry (j, k).
std::vector<std::pair<std::size_t, std::size_t>> hessian_entries(std::size_t j, std::size_t k);

struct ScaleConfig {
    std::vector<CostKind> costs{CostKind::Global, CostKind::Local};
    std::size_t n_min = 2;
    std::size_t n_max = 16;
    std::size_t depth = 4;
    std::size_t seeds = 200;
    std::size_t entry_j = 0;
    std::size_t entry_k = 1;
    GraphFamily family = GraphFamily::Chain;
    std::optional<std::size_t> shots;
    std::uint64_t base_seed = kDefaultBaseSeed;
    std::size_t threads = 1;
};

/// Variance of H_jj and H_jk (and of the cost) over n in [n_min, n_max].
/// Tables: variance, cost_variance, fits.
ExperimentOutput run_scale(const ScaleConfig& config);

struct DepthConfig {
    std::vector<CostKind> costs{CostKind::Global, CostKind::Local};
    std::size_t n = 16;
    std::size_t depth_min = 1;
    std::size_t depth_max = 12;
    std::size_t seeds = 200;
    std::size_t entry_j = 0;
    std::size_t entry_k = 1;
    GraphFamily family = GraphFamily::Chain;
    std::optional<std::size_t> shots;
    std::uint64_t base_seed = kDefaultBaseSeed;
    std::size_t threads = 1;
};

/// Same quantities over L in [depth_min, depth_max] at fixed n.
/// Tables: variance, cost_variance.
ExperimentOutput run_depth(const DepthConfig& config);

std::vector<std::size_t> geometric_grid(std::size_t lo, std::size_t hi, std::size_t factor);

struct ShotsConfig {
    std::vector<CostKind> costs{CostKind::Global, CostKind::Local};
    std::vector<std::size_t> ns{4, 6, 8, 10, 12};
    std::size_t depth = 4;
    std::size_t seeds = 200;
    std::vector<std::size_t> shot_grid = geometric_grid(16, 4096, 2);
    std::size_t entry_j = 0;
    std::size_t entry_k = 0;
    double epsilon = 0.05;
    GraphFamily family = GraphFamily::Chain;
    std::uint64_t base_seed = kDefaultBaseSeed;
    std::size_t threads = 1;
};

/// Finite-shot sweep: exact and shot-mode ensembles on shared initializations,
/// a two-term fit var ~ a + b/N per (cost, n), and N(eps) from each fit.
/// Tables: variance, shot_noise, shot_fit.
ExperimentOutput run_shots(const ShotsConfig& config);

struct SpectrumConfig {
    std::vector<CostKind> costs{CostKind::Global, CostKind::Local};
    std::vector<std::size_t> ns{6, 8, 10};
    std::size_t depth = 4;
    std::size_t seeds = 20;
    double epsilon = 1e-4;
    GraphFamily family = GraphFamily::Chain;
    std::uint64_t base_seed = kDefaultBaseSeed;
    std::size_t threads = 1;
};

/// Full exact Hessians per seed; pooled eigenvalues, lambda_RMS and Deg_eps.
/// Tables: eigenvalues, spectral_summary.
ExperimentOutput run_spectrum(const SpectrumConfig& config);

struct OptimizeConfig {
    std::vector<CostKind> costs{CostKind::Global, CostKind::Local};
    std::vector<Optimizer> optimizers{Optimizer::Sgd, Optimizer::Qng};
    std::size_t n = 10;
    std::size_t depth = 4;
    std::optional<std::size_t> shots = 100;
    std::size_t iterations = 200;
    std::size_t seeds = 10;
    double sgd_step = 0.05;
    double qng_step = 0.02;
    double lambda_reg = 1e-3;
    GraphFamily family = GraphFamily::Chain;
    std::uint64_t base_seed = kDefaultBaseSeed;
    std::size_t threads = 1;
};

/// Trajectories for every optimizer x cost. Tables: trajectory. Extra: oracle accounting.
ExperimentOutput run_optimize(const OptimizeConfig& config);

struct BoundsConfig {
    std::vector<std::size_t> ns{16, 32, 64, 100};
    std::vector<std::size_t> depths{1, 2, 4};
    GraphFamily family = GraphFamily::Chain;
    std::size_t k = 1;
    std::size_t r = 2;
    std::vector<double> etas{1.0, 0.5, 0.25};
    double epsilon = 0.05;
    double c_loc = 1.0;
    double sigma_sq = 1.0;
    // Ensemble CSVs (from scale or depth) whose rows are attached as empirical variances.
    std::vector<std::filesystem::path> empirical_csvs;
};

/// Bound reports over the (n, L, eta) grid for both regimes; diagonal and
/// off-diagonal rules. Extra: reports and noise-only N(eps). Tables: bounds.
ExperimentOutput run_bounds(const BoundsConfig& config);

}  // namespace plateau
