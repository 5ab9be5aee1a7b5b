#include "plateau/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace plateau {

Gate Gate::pauli_rotation(const PauliTerm& string, std::size_t param) {
    Gate g = pauli(string);
    g.param = param;
    return g;
}

Gate Gate::pauli(const PauliTerm& string) {
    if (string.is_identity()) throw std::invalid_argument("Pauli gate needs a nonempty string");
    Gate g{GateKind::PAULI, {}, {}, std::nullopt};
    for (const auto& [q, p] : string.paulis) {
        g.qubits.push_back(q);
        g.paulis.push_back(p);
    }
    return g;
}

PauliTerm Gate::generator_string() const {
    PauliTerm t;
    switch (kind) {
        case GateKind::RY: t.paulis.emplace(qubits.at(0), Pauli::Y); break;
        case GateKind::RX: t.paulis.emplace(qubits.at(0), Pauli::X); break;
        case GateKind::RZ: t.paulis.emplace(qubits.at(0), Pauli::Z); break;
        case GateKind::PAULI:
            for (std::size_t i = 0; i < qubits.size(); ++i) t.paulis.emplace(qubits[i], paulis.at(i));
            break;
        case GateKind::CNOT: throw std::logic_error("CNOT has no rotation generator");
    }
    return t;
}

double wrap_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

ParamPoint ParamPoint::shifted(const ShiftVector& shift) const {
    ParamPoint out = *this;
    for (const auto& [j, delta] : shift) {
        if (j >= theta_.size()) throw std::out_of_range("shift index out of range");
        out.theta_[j] = wrap_angle(out.theta_[j] + delta);
    }
    return out;
}

void Circuit::finalize() {
    std::vector<std::optional<std::size_t>> owner;
    for (std::size_t g = 0; g < gates.size(); ++g) {
        const Gate& gate = gates[g];
        for (std::size_t q : gate.qubits) {
            if (q >= n_qubits) {
                throw std::out_of_range("gate " + std::to_string(g) + " touches qubit " + std::to_string(q));
            }
        }
        const bool needs_param = gate.kind == GateKind::RX || gate.kind == GateKind::RY ||
                                 gate.kind == GateKind::RZ;
        if (needs_param && !gate.param) throw std::invalid_argument("rotation gate without parameter");
        if (gate.kind == GateKind::CNOT && gate.param) throw std::invalid_argument("CNOT cannot be parameterized");
        if (!gate.param) continue;
        const std::size_t p = *gate.param;
        if (p >= owner.size()) owner.resize(p + 1);
        if (owner[p]) throw std::invalid_argument("parameter " + std::to_string(p) + " is shared");
        owner[p] = g;
    }
    param_gate.clear();
    for (std::size_t p = 0; p < owner.size(); ++p) {
        if (!owner[p]) throw std::invalid_argument("parameter " + std::to_string(p) + " is unused");
        param_gate.push_back(*owner[p]);
    }
    param_count = param_gate.size();
}

namespace {

void add_line_bricks(std::vector<Gate>& gates, std::size_t n, bool ring) {
    // Edge i couples (i, i+1); the ring also has edge n-1 -> 0.
    const std::size_t edges = ring && n > 2 ? n : (n > 0 ? n - 1 : 0);
    for (std::size_t parity = 0; parity < 2; ++parity) {
        for (std::size_t i = parity; i < edges; i += 2) gates.push_back(Gate::cnot(i, (i + 1) % n));
    }
}

void add_grid_bricks(std::vector<Gate>& gates, const InteractionGraph& g, bool horizontal) {
    const std::size_t rows = g.rows();
    const std::size_t cols = g.cols();
    for (std::size_t parity = 0; parity < 2; ++parity) {
        if (horizontal) {
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t c = parity; c + 1 < cols; c += 2) {
                    gates.push_back(Gate::cnot(r * cols + c, r * cols + c + 1));
                }
            }
        } else {
            for (std::size_t r = parity; r + 1 < rows; r += 2) {
                for (std::size_t c = 0; c < cols; ++c) gates.push_back(Gate::cnot(r * cols + c, (r + 1) * cols + c));
            }
        }
    }
}

}  // namespace

Circuit build_hardware_efficient(std::size_t n, std::size_t depth, GraphFamily family) {
    if (n == 0) throw std::invalid_argument("ansatz needs n >= 1");
    Circuit c;
    c.n_qubits = n;
    c.depth = depth;
    c.graph = InteractionGraph::make(family, n);
    c.gate_locality = 2;
    for (std::size_t layer = 0; layer < depth; ++layer) {
        switch (family) {
            case GraphFamily::Chain: add_line_bricks(c.gates, n, false); break;
            case GraphFamily::Ring:
            case GraphFamily::Complete: add_line_bricks(c.gates, n, true); break;
            case GraphFamily::Grid2D: add_grid_bricks(c.gates, c.graph, layer % 2 == 0); break;
        }
        for (std::size_t q = 0; q < n; ++q) c.gates.push_back(Gate::ry(q, layer * n + q));
    }
    c.finalize();
    return c;
}

Lightcone backward_lightcone(const Circuit& circuit, std::span<const std::size_t> support) {
    if (support.empty()) throw std::invalid_argument("lightcone needs a nonempty support");
    std::vector<bool> in_cone(circuit.n_qubits, false);
    for (std::size_t q : support) {
        if (q >= circuit.n_qubits) throw std::out_of_range("support qubit out of range");
        in_cone[q] = true;
    }
    std::set<std::size_t> params;
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
        const bool touches = std::any_of(it->qubits.begin(), it->qubits.end(),
                                         [&](std::size_t q) { return in_cone[q]; });
        if (!touches) continue;
        for (std::size_t q : it->qubits) in_cone[q] = true;
        if (it->param) params.insert(*it->param);
    }
    Lightcone cone;
    for (std::size_t q = 0; q < in_cone.size(); ++q) {
        if (in_cone[q]) cone.qubits.push_back(q);
    }
    cone.params.assign(params.begin(), params.end());
    return cone;
}

}  // namespace plateau
