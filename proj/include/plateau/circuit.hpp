#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "plateau/gate.hpp"
#include "plateau/graph.hpp"

namespace plateau {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Sparse parameter displacement: (index, radians) pairs.
using ShiftVector = std::vector<std::pair<std::size_t, double>>;

/// Point on the parameter torus [0, 2pi)^M.
class ParamPoint {
public:
    ParamPoint() = default;
    explicit ParamPoint(std::vector<double> theta) : theta_(std::move(theta)) {}
    explicit ParamPoint(std::size_t m, double value = 0.0) : theta_(m, value) {}

    std::size_t size() const { return theta_.size(); }
    double operator[](std::size_t j) const { return theta_[j]; }
    double& operator[](std::size_t j) { return theta_[j]; }
    std::span<const double> values() const { return theta_; }

    /// theta (+) shift: componentwise addition wrapped into [0, 2pi).
    ParamPoint shifted(const ShiftVector& shift) const;

private:
    std::vector<double> theta_;
};

/// Wraps an angle into [0, 2pi).
double wrap_angle(double x);

/// Layered parameterized circuit. Parameters appear in construction order and
/// each index is owned by exactly one gate.
struct Circuit {
    std::size_t n_qubits = 0;
    std::size_t depth = 0;
    std::vector<Gate> gates;
    std::size_t param_count = 0;
    InteractionGraph graph;
    std::size_t gate_locality = 2;

    /// gate index of each parameter.
    std::vector<std::size_t> param_gate;

    /// Checks qubit ranges and the one-gate-per-parameter rule, then fills
    /// param_gate / param_count.
    void finalize();
};

/// Hardware-efficient brickwork ansatz. Every layer applies the fixed CNOT
/// bricks of the family, then RY on each qubit with fresh parameters
/// (parameter index = layer * n + qubit).
///  - CHAIN / RING: CNOT(i, i+1) for even i, then odd i (RING adds the wrap edge).
///  - GRID2D: even layers use horizontal bricks, odd layers vertical ones.
///  - COMPLETE: ring entanglers; the complete graph is kept for bound work.
Circuit build_hardware_efficient(std::size_t n, std::size_t depth, GraphFamily family);

struct Lightcone {
    std::vector<std::size_t> qubits;  // sorted
    std::vector<std::size_t> params;  // sorted
};

/// Reverse walk over the literal gate list: a gate joins when it touches the
/// current cone, absorbing its qubits and recording its parameter.
Lightcone backward_lightcone(const Circuit& circuit, std::span<const std::size_t> support);

}  // namespace plateau
