#include "plateau/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "plateau/rng.hpp"

namespace plateau {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

double parity_sign(std::uint64_t x) { return (std::popcount(x) & 1) ? -1.0 : 1.0; }

void check_same_register(const Statevector& a, const Statevector& b) {
    if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("statevector qubit counts differ");
}

}  // namespace

Statevector::Statevector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits > kMaxQubits) {
        throw std::invalid_argument("statevector supports at most " + std::to_string(kMaxQubits) +
                                    " qubits");
    }
    amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

Statevector Statevector::basis_state(std::size_t n_qubits, std::uint64_t index) {
    Statevector s(n_qubits);
    if (index >= s.dim()) throw std::out_of_range("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

Statevector Statevector::from_amplitudes(std::vector<cplx> amplitudes) {
    const std::size_t d = amplitudes.size();
    if (d == 0 || !std::has_single_bit(d)) {
        throw std::invalid_argument("amplitude count must be a power of two");
    }
    Statevector s(static_cast<std::size_t>(std::countr_zero(d)));
    s.amps_ = std::move(amplitudes);
    return s;
}

double Statevector::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

void Statevector::reset() {
    std::fill(amps_.begin(), amps_.end(), cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

void Statevector::check_qubit(std::size_t q) const {
    if (q >= n_qubits_) throw std::out_of_range("qubit index " + std::to_string(q) + " out of range");
}

// Generic single-qubit kernel over amplitude pairs (i, i + stride).
#define PLATEAU_FOR_PAIRS(q, BODY)                                             \
    do {                                                                       \
        const std::size_t stride_ = std::size_t{1} << (q);                     \
        const std::size_t d_ = amps_.size();                                   \
        for (std::size_t base_ = 0; base_ < d_; base_ += 2 * stride_) {        \
            for (std::size_t i0 = base_; i0 < base_ + stride_; ++i0) {         \
                const std::size_t i1 = i0 + stride_;                           \
                BODY                                                           \
            }                                                                  \
        }                                                                      \
    } while (0)

void Statevector::apply_ry(std::size_t q, double angle) {
    check_qubit(q);
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    PLATEAU_FOR_PAIRS(q, {
        const cplx a0 = amps_[i0];
        const cplx a1 = amps_[i1];
        amps_[i0] = c * a0 - s * a1;
        amps_[i1] = s * a0 + c * a1;
    });
}

void Statevector::apply_rx(std::size_t q, double angle) {
    check_qubit(q);
    const double c = std::cos(angle / 2.0);
    const cplx mis{0.0, -std::sin(angle / 2.0)};
    PLATEAU_FOR_PAIRS(q, {
        const cplx a0 = amps_[i0];
        const cplx a1 = amps_[i1];
        amps_[i0] = c * a0 + mis * a1;
        amps_[i1] = mis * a0 + c * a1;
    });
}

void Statevector::apply_rz(std::size_t q, double angle) {
    check_qubit(q);
    const cplx p0 = std::polar(1.0, -angle / 2.0);
    const cplx p1 = std::polar(1.0, angle / 2.0);
    PLATEAU_FOR_PAIRS(q, {
        amps_[i0] *= p0;
        amps_[i1] *= p1;
    });
}

void Statevector::apply_h(std::size_t q) {
    check_qubit(q);
    const double r = 1.0 / std::sqrt(2.0);
    PLATEAU_FOR_PAIRS(q, {
        const cplx a0 = amps_[i0];
        const cplx a1 = amps_[i1];
        amps_[i0] = r * (a0 + a1);
        amps_[i1] = r * (a0 - a1);
    });
}

void Statevector::apply_sdg(std::size_t q) {
    check_qubit(q);
    PLATEAU_FOR_PAIRS(q, { amps_[i1] *= -kI; });
}

#undef PLATEAU_FOR_PAIRS

void Statevector::apply_cnot(std::size_t control, std::size_t target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw std::invalid_argument("CNOT control equals target");
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
    }
}

void Statevector::apply_pauli(const PauliTerm& string) {
    for (const auto& [q, p] : string.paulis) check_qubit(q);
    const std::uint64_t xm = string.x_mask();
    const std::uint64_t zm = string.z_mask();
    const cplx phase = i_power(string.y_count());
    std::vector<cplx> out(amps_.size());
    for (std::size_t x = 0; x < amps_.size(); ++x) {
        out[x ^ xm] = phase * parity_sign(x & zm) * amps_[x];
    }
    amps_ = std::move(out);
}

void Statevector::apply_pauli_rotation(const PauliTerm& string, double angle) {
    for (const auto& [q, p] : string.paulis) check_qubit(q);
    const std::uint64_t xm = string.x_mask();
    const std::uint64_t zm = string.z_mask();
    const cplx phase = i_power(string.y_count());
    const double c = std::cos(angle / 2.0);
    const cplx mis{0.0, -std::sin(angle / 2.0)};
    std::vector<cplx> out(amps_.size());
    for (std::size_t x = 0; x < amps_.size(); ++x) {
        out[x] += c * amps_[x];
        out[x ^ xm] += mis * phase * parity_sign(x & zm) * amps_[x];
    }
    amps_ = std::move(out);
}

void Statevector::scale(cplx factor) {
    for (auto& a : amps_) a *= factor;
}

void apply_gate(Statevector& state, const Gate& gate, std::optional<double> angle) {
    if (gate.parameterized() != angle.has_value()) {
        throw std::invalid_argument(gate.parameterized() ? "angle missing for parameterized gate"
                                                         : "angle given for fixed gate");
    }
    switch (gate.kind) {
        case GateKind::RY: state.apply_ry(gate.qubits.at(0), *angle); break;
        case GateKind::RX: state.apply_rx(gate.qubits.at(0), *angle); break;
        case GateKind::RZ: state.apply_rz(gate.qubits.at(0), *angle); break;
        case GateKind::CNOT: state.apply_cnot(gate.qubits.at(0), gate.qubits.at(1)); break;
        case GateKind::PAULI: {
            const PauliTerm p = gate.generator_string();
            if (angle) {
                state.apply_pauli_rotation(p, *angle);
            } else {
                state.apply_pauli(p);
            }
            break;
        }
    }
}

cplx inner_product(const Statevector& a, const Statevector& b) {
    check_same_register(a, b);
    cplx s{0.0, 0.0};
    const auto aa = a.amplitudes();
    const auto bb = b.amplitudes();
    for (std::size_t i = 0; i < aa.size(); ++i) s += std::conj(aa[i]) * bb[i];
    return s;
}

cplx matrix_element(const Statevector& bra, const PauliTerm& term, const Statevector& ket) {
    check_same_register(bra, ket);
    for (const auto& [q, p] : term.paulis) {
        if (q >= ket.n_qubits()) throw std::out_of_range("Pauli term acts outside the register");
    }
    const std::uint64_t xm = term.x_mask();
    const std::uint64_t zm = term.z_mask();
    const auto b = bra.amplitudes();
    const auto k = ket.amplitudes();
    cplx s{0.0, 0.0};
    if (xm == 0) {
        for (std::size_t x = 0; x < k.size(); ++x) s += parity_sign(x & zm) * std::conj(b[x]) * k[x];
    } else {
        for (std::size_t x = 0; x < k.size(); ++x) {
            s += parity_sign(x & zm) * std::conj(b[x ^ xm]) * k[x];
        }
        s *= i_power(term.y_count());
    }
    return term.coeff * s;
}

double expectation(const Statevector& state, const PauliTerm& term) {
    const std::uint64_t zm = term.z_mask();
    if (term.x_mask() == 0) {
        for (const auto& [q, p] : term.paulis) {
            if (q >= state.n_qubits()) throw std::out_of_range("Pauli term acts outside the register");
        }
        double s = 0.0;
        const auto a = state.amplitudes();
        for (std::size_t x = 0; x < a.size(); ++x) s += parity_sign(x & zm) * std::norm(a[x]);
        return term.coeff * s;
    }
    return matrix_element(state, term, state).real();
}

double expectation(const Statevector& state, const Observable& obs) {
    if (obs.n_qubits() != state.n_qubits()) {
        throw std::invalid_argument("observable and state qubit counts differ");
    }
    // Z-only terms share one pass over the probabilities.
    std::vector<const PauliTerm*> diagonal;
    double total = 0.0;
    for (const auto& t : obs.terms()) {
        if (t.is_identity()) {
            total += t.coeff;
        } else if (t.x_mask() == 0) {
            diagonal.push_back(&t);
        } else {
            total += expectation(state, t);
        }
    }
    if (!diagonal.empty()) {
        const auto a = state.amplitudes();
        for (std::size_t x = 0; x < a.size(); ++x) {
            const double p = std::norm(a[x]);
            if (p == 0.0) continue;
            double v = 0.0;
            for (const PauliTerm* t : diagonal) v += t->coeff * parity_sign(x & t->z_mask());
            total += p * v;
        }
    }
    return total;
}

std::vector<std::uint64_t> sample_outcomes(const Statevector& state, std::size_t shots, Rng& rng) {
    const auto a = state.amplitudes();
    std::vector<double> cdf(a.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::norm(a[i]);
        cdf[i] = acc;
    }
    std::vector<std::uint64_t> out(shots);
    for (auto& o : out) {
        const double u = rng.uniform() * acc;
        auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        // Rounding can push u to the end; fall back to the last reachable outcome.
        if (idx == cdf.size()) {
            idx = cdf.size() - 1;
            while (idx > 0 && std::norm(a[idx]) == 0.0) --idx;
        }
        o = idx;
    }
    return out;
}

namespace {

struct BasisGroup {
    MeasurementBasis basis;
    std::vector<const PauliTerm*> terms;
    std::uint64_t support = 0;
};

std::vector<BasisGroup> group_terms(const Observable& obs) {
    std::vector<BasisGroup> groups;
    for (const auto& t : obs.terms()) {
        const auto b = t.basis();
        if (b == MeasurementBasis::Identity) continue;
        if (b == MeasurementBasis::Mixed) {
            throw std::invalid_argument("cannot sample term " + t.label(obs.n_qubits()) +
                                        ": mixed-letter Pauli strings have no single readout basis");
        }
        auto it = std::find_if(groups.begin(), groups.end(), [&](const BasisGroup& g) { return g.basis == b; });
        if (it == groups.end()) {
            groups.push_back({b, {}, 0});
            it = std::prev(groups.end());
        }
        it->terms.push_back(&t);
        it->support |= t.x_mask() | t.z_mask();
    }
    return groups;
}

// Rotates the group's readout basis onto Z: H for X, S^dagger then H for Y.
Statevector rotated_for(const Statevector& state, const BasisGroup& g) {
    Statevector s = state;
    if (g.basis == MeasurementBasis::Z) return s;
    for (std::size_t q = 0; q < s.n_qubits(); ++q) {
        if (!((g.support >> q) & 1U)) continue;
        if (g.basis == MeasurementBasis::Y) s.apply_sdg(q);
        s.apply_h(q);
    }
    return s;
}

double outcome_value(const BasisGroup& g, std::uint64_t x) {
    // After rotation every term is diagonal with eigenvalue (-1)^{popcount(x & support)}.
    double v = 0.0;
    for (const PauliTerm* t : g.terms) v += t->coeff * parity_sign(x & (t->x_mask() | t->z_mask()));
    return v;
}

double identity_part(const Observable& obs) {
    double c = 0.0;
    for (const auto& t : obs.terms()) {
        if (t.is_identity()) c += t.coeff;
    }
    return c;
}

}  // namespace

double sample_expectation(const Statevector& state, const Observable& obs, std::size_t shots, Rng& rng) {
    if (shots == 0) throw std::invalid_argument("shot count must be at least 1");
    if (obs.n_qubits() != state.n_qubits()) {
        throw std::invalid_argument("observable and state qubit counts differ");
    }
    double total = identity_part(obs);
    for (const auto& g : group_terms(obs)) {
        const Statevector s = rotated_for(state, g);
        double sum = 0.0;
        for (std::uint64_t x : sample_outcomes(s, shots, rng)) sum += outcome_value(g, x);
        total += sum / static_cast<double>(shots);
    }
    return total;
}

double shot_variance(const Statevector& state, const Observable& obs, std::size_t shots) {
    if (shots == 0) throw std::invalid_argument("shot count must be at least 1");
    double total = 0.0;
    for (const auto& g : group_terms(obs)) {
        const Statevector s = rotated_for(state, g);
        const auto a = s.amplitudes();
        double m1 = 0.0;
        double m2 = 0.0;
        for (std::size_t x = 0; x < a.size(); ++x) {
            const double p = std::norm(a[x]);
            if (p == 0.0) continue;
            const double v = outcome_value(g, x);
            m1 += p * v;
            m2 += p * v * v;
        }
        total += std::max(0.0, m2 - m1 * m1);
    }
    return total / static_cast<double>(shots);
}

}  // namespace plateau
