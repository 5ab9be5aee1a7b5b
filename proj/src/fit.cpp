#include "plateau/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace plateau {

std::string to_string(FitModel model) {
    switch (model) {
        case FitModel::ExpInN: return "exp_in_n";
        case FitModel::PowerInN: return "power_in_n";
        case FitModel::TwoTermInShots: return "two_term_in_shots";
    }
    return "unknown";
}

double FitResult::predict(double x) const {
    switch (model) {
        case FitModel::ExpInN: return first * std::exp(-second * x);
        case FitModel::PowerInN: return first * std::pow(x, -second);
        case FitModel::TwoTermInShots: return first + second / x;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

namespace {

struct Line {
    double intercept;
    double slope;
    double r_squared;
};

// Weighted least squares for y ~ intercept + slope * x.
Line weighted_line(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& w) {
    double sw = 0, sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
    }
    const double mx = sx / sw;
    const double my = sy / sw;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += w[i] * (x[i] - mx) * (x[i] - mx);
        sxy += w[i] * (x[i] - mx) * (y[i] - my);
        syy += w[i] * (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0) throw std::invalid_argument("fit needs at least two distinct x values");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - intercept - slope * x[i];
        ss_res += w[i] * r * r;
    }
    const double r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return {intercept, slope, std::clamp(r2, 0.0, 1.0)};
}

double weighted_sse(const std::vector<double>& u, const std::vector<double>& y, const std::vector<double>& w,
                    double a, double b) {
    double s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r = a + b * u[i] - y[i];
        s += w[i] * r * r;
    }
    return s;
}

FitResult fit_two_term(std::span<const double> shots, std::span<const double> var) {
    std::vector<double> u, y, w;
    const bool all_positive = std::all_of(var.begin(), var.end(), [](double v) { return v > 0.0; });
    for (std::size_t i = 0; i < shots.size(); ++i) {
        if (!(shots[i] > 0.0)) throw std::invalid_argument("two-term fit needs positive shot counts");
        u.push_back(1.0 / shots[i]);
        y.push_back(var[i]);
        w.push_back(all_positive ? 1.0 / (var[i] * var[i]) : 1.0);
    }
    struct Candidate {
        double a, b;
    };
    std::vector<Candidate> candidates;
    const Line free = weighted_line(u, y, w);
    if (free.intercept >= 0.0 && free.slope >= 0.0) {
        candidates.push_back({free.intercept, free.slope});
    } else {
        // Boundary solutions of the nonnegative problem.
        double swuy = 0, swuu = 0, swy = 0, sw = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            swuy += w[i] * u[i] * y[i];
            swuu += w[i] * u[i] * u[i];
            swy += w[i] * y[i];
            sw += w[i];
        }
        candidates.push_back({0.0, std::max(0.0, swuy / swuu)});
        candidates.push_back({std::max(0.0, swy / sw), 0.0});
    }
    Candidate best = candidates.front();
    double best_sse = weighted_sse(u, y, w, best.a, best.b);
    for (const auto& c : candidates) {
        const double s = weighted_sse(u, y, w, c.a, c.b);
        if (s < best_sse) {
            best = c;
            best_sse = s;
        }
    }
    double sw = 0, swy = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        sw += w[i];
        swy += w[i] * y[i];
    }
    const double ybar = swy / sw;
    double ss_tot = 0;
    for (std::size_t i = 0; i < y.size(); ++i) ss_tot += w[i] * (y[i] - ybar) * (y[i] - ybar);
    const double r2 = ss_tot > 0.0 ? 1.0 - best_sse / ss_tot : 1.0;
    return {FitModel::TwoTermInShots, best.a, best.b, std::clamp(r2, 0.0, 1.0)};
}

}  // namespace

FitResult fit_scaling(std::span<const double> x, std::span<const double> y, FitModel model) {
    if (x.size() != y.size()) throw std::invalid_argument("fit inputs differ in length");
    if (x.size() < 3) throw std::invalid_argument("fit needs at least 3 points");
    if (model == FitModel::TwoTermInShots) return fit_two_term(x, y);

    std::vector<double> lx, ly, w(x.size(), 1.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > 0.0)) throw std::invalid_argument("log-scale fit needs positive variances");
        if (model == FitModel::PowerInN) {
            if (!(x[i] > 0.0)) throw std::invalid_argument("power-law fit needs positive x");
            lx.push_back(std::log(x[i]));
        } else {
            lx.push_back(x[i]);
        }
        ly.push_back(std::log(y[i]));
    }
    const Line line = weighted_line(lx, ly, w);
    return {model, std::exp(line.intercept), -line.slope, line.r_squared};
}

}  // namespace plateau
