#pragma once

#include <span>
#include <string>

namespace plateau {

enum class FitModel {
    ExpInN,         // var ~ c * exp(-alpha * n), least squares on log var
    PowerInN,       // var ~ c * n^(-p), least squares on log var vs log n
    TwoTermInShots  // var ~ a + b / N, nonnegative least squares on var
};

std::string to_string(FitModel model);

/// Fitted scaling law. For ExpInN: (c, alpha); PowerInN: (c, p); TwoTermInShots: (a, b).
struct FitResult {
    FitModel model = FitModel::ExpInN;
    double first = 0.0;
    double second = 0.0;
    double r_squared = 0.0;  // on the fitted (transformed) scale, clamped to [0, 1]

    double c() const { return first; }
    double alpha() const { return second; }
    double p() const { return second; }
    double a() const { return first; }
    double b() const { return second; }

    double predict(double x) const;
};

/// Needs at least 3 points; the log models reject nonpositive values.
/// TwoTermInShots weights every residual by 1/y so each shot budget counts
/// relative to its own variance.
FitResult fit_scaling(std::span<const double> x, std::span<const double> y, FitModel model);

}  // namespace plateau
