#include "plateau/execute.hpp"

#include <optional>
#include <stdexcept>

namespace plateau {

namespace {

void check_point(const Circuit& circuit, const ParamPoint& theta) {
    if (theta.size() != circuit.param_count) {
        throw std::invalid_argument("parameter point has " + std::to_string(theta.size()) +
                                    " entries, circuit expects " + std::to_string(circuit.param_count));
    }
}

void run_gate(const Gate& gate, const ParamPoint& theta, Statevector& state) {
    apply_gate(state, gate, gate.param ? std::optional<double>(theta[*gate.param]) : std::nullopt);
}

// Multiplies by -i G = -i P / 2.
void apply_minus_i_generator(const Gate& gate, Statevector& state) {
    state.apply_pauli(gate.generator_string());
    state.scale(cplx{0.0, -0.5});
}

}  // namespace

void prepare_state(const Circuit& circuit, const ParamPoint& theta, Statevector& scratch) {
    check_point(circuit, theta);
    if (scratch.n_qubits() != circuit.n_qubits) {
        scratch = Statevector(circuit.n_qubits);
    } else {
        scratch.reset();
    }
    for (const Gate& g : circuit.gates) run_gate(g, theta, scratch);
}

Statevector prepare_state(const Circuit& circuit, const ParamPoint& theta) {
    Statevector s(circuit.n_qubits);
    prepare_state(circuit, theta, s);
    return s;
}

Statevector derivative_state(const Circuit& circuit, const ParamPoint& theta, std::size_t j) {
    check_point(circuit, theta);
    if (j >= circuit.param_count) throw std::out_of_range("parameter index out of range");
    const std::size_t target = circuit.param_gate[j];
    Statevector s(circuit.n_qubits);
    for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
        run_gate(circuit.gates[g], theta, s);
        if (g == target) apply_minus_i_generator(circuit.gates[g], s);
    }
    return s;
}

std::vector<Statevector> derivative_states(const Circuit& circuit, const ParamPoint& theta) {
    check_point(circuit, theta);
    std::vector<Statevector> out(circuit.param_count, Statevector(0));
    Statevector prefix(circuit.n_qubits);
    for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
        const Gate& gate = circuit.gates[g];
        run_gate(gate, theta, prefix);
        if (!gate.param) continue;
        Statevector d = prefix;
        apply_minus_i_generator(gate, d);
        for (std::size_t h = g + 1; h < circuit.gates.size(); ++h) run_gate(circuit.gates[h], theta, d);
        out[*gate.param] = std::move(d);
    }
    return out;
}

}  // namespace plateau
