#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "plateau/gate.hpp"
#include "plateau/observable.hpp"

namespace plateau {

class Rng;

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 20;

/// Dense n-qubit state. Amplitude index bit q holds qubit q, so the ket
/// |b0 b1 ... b_{n-1}> lives at index sum_q b_q 2^q.
class Statevector {
public:
    /// |0...0>.
    explicit Statevector(std::size_t n_qubits);

    static Statevector basis_state(std::size_t n_qubits, std::uint64_t index);
    /// Takes amplitudes as given; the length must be a power of two. No
    /// normalization is applied.
    static Statevector from_amplitudes(std::vector<cplx> amplitudes);

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }

    std::span<const cplx> amplitudes() const { return amps_; }
    std::span<cplx> amplitudes() { return amps_; }
    const cplx& operator[](std::size_t i) const { return amps_[i]; }
    cplx& operator[](std::size_t i) { return amps_[i]; }

    double norm_squared() const;
    void reset();

    void apply_ry(std::size_t q, double angle);
    void apply_rx(std::size_t q, double angle);
    void apply_rz(std::size_t q, double angle);
    void apply_h(std::size_t q);
    void apply_sdg(std::size_t q);
    void apply_cnot(std::size_t control, std::size_t target);
    /// P|psi> for a Pauli string (coefficient ignored).
    void apply_pauli(const PauliTerm& string);
    /// exp(-i angle P/2)|psi>.
    void apply_pauli_rotation(const PauliTerm& string, double angle);
    /// Multiplies every amplitude by `factor`.
    void scale(cplx factor);

private:
    void check_qubit(std::size_t q) const;

    std::size_t n_qubits_;
    std::vector<cplx> amps_;
};

/// Applies `gate` in place. `angle` must be present iff the gate is parameterized.
void apply_gate(Statevector& state, const Gate& gate, std::optional<double> angle);

/// <a|b>.
cplx inner_product(const Statevector& a, const Statevector& b);

/// <bra| P |ket> for a Pauli string, coefficient included.
cplx matrix_element(const Statevector& bra, const PauliTerm& term, const Statevector& ket);

/// <psi|P|psi> * coeff.
double expectation(const Statevector& state, const PauliTerm& term);

/// sum_t coeff_t <psi|P_t|psi>.
double expectation(const Statevector& state, const Observable& obs);

/// Finite-shot estimate of <O>: each measurement basis group (Z, X, Y terms)
/// gets `shots` fresh computational-basis samples after the exact basis
/// rotation, identity terms contribute their coefficient exactly.
double sample_expectation(const Statevector& state, const Observable& obs, std::size_t shots,
                          Rng& rng);

/// Exact conditional variance of `sample_expectation` for this state.
double shot_variance(const Statevector& state, const Observable& obs, std::size_t shots);

/// Draws `shots` basis-state indices from |amplitude|^2.
std::vector<std::uint64_t> sample_outcomes(const Statevector& state, std::size_t shots, Rng& rng);

}  // namespace plateau
