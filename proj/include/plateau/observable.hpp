#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plateau {

enum class Pauli : std::uint8_t { X, Y, Z };

char pauli_char(Pauli p);

/// Measurement basis a term can be read out in with a single product-basis
/// rotation. Terms mixing letters (e.g. X0 Z1) are Mixed and cannot be sampled.
enum class MeasurementBasis : std::uint8_t { Identity, Z, X, Y, Mixed };

/// Real-weighted Pauli string. Qubit q maps to bit q of a basis-state index.
struct PauliTerm {
    double coeff = 1.0;
    std::map<std::size_t, Pauli> paulis;

    PauliTerm() = default;
    PauliTerm(double c, std::map<std::size_t, Pauli> p) : coeff(c), paulis(std::move(p)) {}

    bool is_identity() const { return paulis.empty(); }
    std::vector<std::size_t> support() const;

    std::uint64_t x_mask() const;
    std::uint64_t z_mask() const;
    int y_count() const;

    MeasurementBasis basis() const;

    /// Dense label such as "ZIZ" (qubit 0 first).
    std::string label(std::size_t n_qubits) const;
};

enum class ObservableKind : std::uint8_t {
    GlobalParity,
    LocalZAvg,
    TfimDensity,
    GlobalCustom,
    LocalCustom,
};

std::string to_string(ObservableKind kind);

/// Hermitian observable as a real combination of Pauli strings.
class Observable {
public:
    Observable(std::size_t n_qubits, ObservableKind kind, std::vector<PauliTerm> terms,
               double declared_norm_bound);

    std::size_t n_qubits() const { return n_qubits_; }
    ObservableKind kind() const { return kind_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }
    std::size_t locality() const { return locality_; }
    double declared_norm_bound() const { return declared_norm_bound_; }

    /// Sum of |coeff| over terms; an upper bound on |<O>|.
    double abs_coeff_sum() const;

    /// True for the averaged k-local kinds, whose terms feed a dependency graph.
    bool term_wise_local() const;

    // Coupling constants, present for TFIM observables only.
    std::optional<double> coupling_j;
    std::optional<double> field_h;

private:
    std::size_t n_qubits_;
    ObservableKind kind_;
    std::vector<PauliTerm> terms_;
    std::size_t locality_ = 0;
    double declared_norm_bound_;
};

/// Z on every qubit.
Observable make_global_parity(std::size_t n);

/// (1/n) sum_i Z_i.
Observable make_local_z_average(std::size_t n);

/// Periodic transverse-field Ising energy density <H>/(2n):
/// terms -J/(2n) Z_i Z_{i+1} and -h/(2n) X_i. Requires n >= 3.
Observable make_tfim_density(std::size_t n, double J, double h);

/// Unnormalized periodic TFIM Hamiltonian -J sum Z_i Z_{i+1} - h sum X_i.
Observable make_tfim_hamiltonian(std::size_t n, double J, double h);

/// Single Pauli string observable (coeff taken from the term).
Observable make_single_term(std::size_t n, PauliTerm term);

/// Identity observable with the given constant value.
Observable make_identity(std::size_t n, double value = 1.0);

}  // namespace plateau
