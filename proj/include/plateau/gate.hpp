#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "plateau/observable.hpp"

namespace plateau {

enum class GateKind : std::uint8_t { RY, RX, RZ, CNOT, PAULI };

/// One circuit instruction. Rotations use exp(-i angle P/2); a PAULI gate is
/// a Pauli-string rotation when it carries a parameter and a fixed Pauli
/// string otherwise.
struct Gate {
    GateKind kind = GateKind::RY;
    std::vector<std::size_t> qubits;  // target | (control, target) | string support
    std::vector<Pauli> paulis;        // PAULI only, aligned with `qubits`
    std::optional<std::size_t> param;

    static Gate ry(std::size_t q, std::size_t param) { return {GateKind::RY, {q}, {}, param}; }
    static Gate rx(std::size_t q, std::size_t param) { return {GateKind::RX, {q}, {}, param}; }
    static Gate rz(std::size_t q, std::size_t param) { return {GateKind::RZ, {q}, {}, param}; }
    static Gate cnot(std::size_t control, std::size_t target) {
        return {GateKind::CNOT, {control, target}, {}, std::nullopt};
    }
    static Gate pauli_rotation(const PauliTerm& string, std::size_t param);
    static Gate pauli(const PauliTerm& string);

    bool parameterized() const { return param.has_value(); }

    /// Pauli string P with generator G = P/2 (coefficient 1). Only meaningful
    /// for parameterized gates.
    PauliTerm generator_string() const;
};

}  // namespace plateau
