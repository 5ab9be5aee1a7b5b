#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "plateau/circuit.hpp"

namespace plateau {

/// A derivative written as sum_s w_s C(theta (+) s) over a finite shift set.
class ShiftRule {
public:
    struct Entry {
        ShiftVector shift;
        double weight;
    };

    enum class Kind { Gradient, Diagonal, OffDiagonal };

    /// {+pi/2 e_j, -pi/2 e_j} with weights {+1/2, -1/2}.
    static ShiftRule gradient(std::size_t j);
    /// {+pi e_j, 0, -pi e_j} with weights {1/4, -1/2, 1/4}.
    static ShiftRule diagonal(std::size_t j);
    /// (+,+), (+,-), (-,+), (-,-) pi/2 shifts with weights {1/4, -1/4, -1/4, 1/4}.
    /// Throws when j == k.
    static ShiftRule off_diagonal(std::size_t j, std::size_t k);
    /// Diagonal rule when j == k, off-diagonal otherwise.
    static ShiftRule hessian(std::size_t j, std::size_t k);

    Kind kind() const { return kind_; }
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    std::vector<double> weights() const;

    /// c_S = sum_s w_s^2 (shot-noise constant).
    double c_s() const;
    /// sum_s |w_s| (transference constant).
    double abs_weight_sum() const;

private:
    ShiftRule(Kind kind, std::vector<Entry> entries) : kind_(kind), entries_(std::move(entries)) {}

    Kind kind_;
    std::vector<Entry> entries_;
};

std::string to_string(ShiftRule::Kind kind);

}  // namespace plateau
