#include "plateau/shift_rule.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace plateau {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
}  // namespace

ShiftRule ShiftRule::gradient(std::size_t j) {
    return ShiftRule(Kind::Gradient, {{{{j, kHalfPi}}, 0.5}, {{{j, -kHalfPi}}, -0.5}});
}

ShiftRule ShiftRule::diagonal(std::size_t j) {
    return ShiftRule(Kind::Diagonal, {{{{j, kPi}}, 0.25}, {{}, -0.5}, {{{j, -kPi}}, 0.25}});
}

ShiftRule ShiftRule::off_diagonal(std::size_t j, std::size_t k) {
    if (j == k) throw std::invalid_argument("off-diagonal shift rule requires j != k");
    return ShiftRule(Kind::OffDiagonal, {
                                            {{{j, kHalfPi}, {k, kHalfPi}}, 0.25},
                                            {{{j, kHalfPi}, {k, -kHalfPi}}, -0.25},
                                            {{{j, -kHalfPi}, {k, kHalfPi}}, -0.25},
                                            {{{j, -kHalfPi}, {k, -kHalfPi}}, 0.25},
                                        });
}

ShiftRule ShiftRule::hessian(std::size_t j, std::size_t k) {
    return j == k ? diagonal(j) : off_diagonal(j, k);
}

std::vector<double> ShiftRule::weights() const {
    std::vector<double> w;
    w.reserve(entries_.size());
    for (const auto& e : entries_) w.push_back(e.weight);
    return w;
}

double ShiftRule::c_s() const {
    double s = 0.0;
    for (const auto& e : entries_) s += e.weight * e.weight;
    return s;
}

double ShiftRule::abs_weight_sum() const {
    double s = 0.0;
    for (const auto& e : entries_) s += std::abs(e.weight);
    return s;
}

std::string to_string(ShiftRule::Kind kind) {
    switch (kind) {
        case ShiftRule::Kind::Gradient: return "gradient";
        case ShiftRule::Kind::Diagonal: return "diagonal";
        case ShiftRule::Kind::OffDiagonal: return "off_diagonal";
    }
    return "unknown";
}

}  // namespace plateau
