#include "plateau/observable.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace plateau {

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

std::vector<std::size_t> PauliTerm::support() const {
    std::vector<std::size_t> out;
    out.reserve(paulis.size());
    for (const auto& [q, p] : paulis) out.push_back(q);
    return out;
}

std::uint64_t PauliTerm::x_mask() const {
    std::uint64_t m = 0;
    for (const auto& [q, p] : paulis) {
        if (p == Pauli::X || p == Pauli::Y) m |= std::uint64_t{1} << q;
    }
    return m;
}

std::uint64_t PauliTerm::z_mask() const {
    std::uint64_t m = 0;
    for (const auto& [q, p] : paulis) {
        if (p == Pauli::Z || p == Pauli::Y) m |= std::uint64_t{1} << q;
    }
    return m;
}

int PauliTerm::y_count() const {
    return static_cast<int>(std::count_if(paulis.begin(), paulis.end(),
                                          [](const auto& kv) { return kv.second == Pauli::Y; }));
}

MeasurementBasis PauliTerm::basis() const {
    if (paulis.empty()) return MeasurementBasis::Identity;
    const Pauli first = paulis.begin()->second;
    for (const auto& [q, p] : paulis) {
        if (p != first) return MeasurementBasis::Mixed;
    }
    switch (first) {
        case Pauli::X: return MeasurementBasis::X;
        case Pauli::Y: return MeasurementBasis::Y;
        case Pauli::Z: return MeasurementBasis::Z;
    }
    return MeasurementBasis::Mixed;
}

std::string PauliTerm::label(std::size_t n_qubits) const {
    std::string s(n_qubits, 'I');
    for (const auto& [q, p] : paulis) {
        if (q < n_qubits) s[q] = pauli_char(p);
    }
    return s;
}

std::string to_string(ObservableKind kind) {
    switch (kind) {
        case ObservableKind::GlobalParity: return "global";
        case ObservableKind::LocalZAvg: return "local";
        case ObservableKind::TfimDensity: return "tfim";
        case ObservableKind::GlobalCustom: return "global_custom";
        case ObservableKind::LocalCustom: return "local_custom";
    }
    return "unknown";
}

Observable::Observable(std::size_t n_qubits, ObservableKind kind, std::vector<PauliTerm> terms,
                       double declared_norm_bound)
    : n_qubits_(n_qubits),
      kind_(kind),
      terms_(std::move(terms)),
      declared_norm_bound_(declared_norm_bound) {
    if (n_qubits_ == 0) throw std::invalid_argument("observable needs at least one qubit");
    for (const auto& t : terms_) {
        if (!std::isfinite(t.coeff)) throw std::invalid_argument("non-finite Pauli coefficient");
        for (const auto& [q, p] : t.paulis) {
            if (q >= n_qubits_) throw std::out_of_range("Pauli term acts outside the register");
        }
        locality_ = std::max(locality_, t.paulis.size());
    }
    if (term_wise_local()) {
        for (const auto& t : terms_) {
            if (std::abs(t.coeff) > 1.0) {
                throw std::invalid_argument("term-wise local observable has a term with norm > 1");
            }
        }
    }
}

double Observable::abs_coeff_sum() const {
    double s = 0.0;
    for (const auto& t : terms_) s += std::abs(t.coeff);
    return s;
}

bool Observable::term_wise_local() const {
    return kind_ == ObservableKind::LocalZAvg || kind_ == ObservableKind::TfimDensity ||
           kind_ == ObservableKind::LocalCustom;
}

Observable make_global_parity(std::size_t n) {
    if (n == 0) throw std::invalid_argument("parity needs n >= 1");
    PauliTerm t;
    for (std::size_t q = 0; q < n; ++q) t.paulis.emplace(q, Pauli::Z);
    return Observable(n, ObservableKind::GlobalParity, {t}, 1.0);
}

Observable make_local_z_average(std::size_t n) {
    if (n == 0) throw std::invalid_argument("local average needs n >= 1");
    std::vector<PauliTerm> terms;
    terms.reserve(n);
    const double c = 1.0 / static_cast<double>(n);
    for (std::size_t q = 0; q < n; ++q) terms.emplace_back(c, std::map<std::size_t, Pauli>{{q, Pauli::Z}});
    return Observable(n, ObservableKind::LocalZAvg, std::move(terms), 1.0);
}

namespace {

std::vector<PauliTerm> tfim_terms(std::size_t n, double zz_coeff, double x_coeff) {
    std::vector<PauliTerm> terms;
    terms.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        terms.emplace_back(zz_coeff, std::map<std::size_t, Pauli>{{i, Pauli::Z}, {(i + 1) % n, Pauli::Z}});
    }
    for (std::size_t i = 0; i < n; ++i) {
        terms.emplace_back(x_coeff, std::map<std::size_t, Pauli>{{i, Pauli::X}});
    }
    return terms;
}

}  // namespace

Observable make_tfim_density(std::size_t n, double J, double h) {
    if (n < 3) throw std::invalid_argument("periodic TFIM needs n >= 3");
    const double scale = 1.0 / (2.0 * static_cast<double>(n));
    auto terms = tfim_terms(n, -J * scale, -h * scale);
    const double bound = (std::abs(J) + std::abs(h)) / 2.0;
    Observable obs(n, ObservableKind::TfimDensity, std::move(terms), bound);
    obs.coupling_j = J;
    obs.field_h = h;
    return obs;
}

Observable make_tfim_hamiltonian(std::size_t n, double J, double h) {
    if (n < 3) throw std::invalid_argument("periodic TFIM needs n >= 3");
    auto terms = tfim_terms(n, -J, -h);
    const double bound = static_cast<double>(n) * (std::abs(J) + std::abs(h));
    Observable obs(n, ObservableKind::GlobalCustom, std::move(terms), bound);
    obs.coupling_j = J;
    obs.field_h = h;
    return obs;
}

Observable make_single_term(std::size_t n, PauliTerm term) {
    const double bound = std::abs(term.coeff);
    const auto kind = term.paulis.size() == n && n > 1 ? ObservableKind::GlobalCustom
                                                         : ObservableKind::LocalCustom;
    return Observable(n, kind, {std::move(term)}, bound);
}

Observable make_identity(std::size_t n, double value) {
    return Observable(n, ObservableKind::GlobalCustom, {PauliTerm(value, {})}, std::abs(value));
}

}  // namespace plateau
