#pragma once

#include <cstddef>
#include <vector>

#include "plateau/circuit.hpp"
#include "plateau/statevector.hpp"

namespace plateau {

/// U(theta)|0...0>.
Statevector prepare_state(const Circuit& circuit, const ParamPoint& theta);

/// Same, reusing `scratch` (resized/reset as needed) to avoid allocation.
void prepare_state(const Circuit& circuit, const ParamPoint& theta, Statevector& scratch);

/// |d_j psi> = U_{>j} (-i G_j) U_{<=j} |0>, with G_j = P_j / 2. Not normalized;
/// its norm is at most 1/2.
Statevector derivative_state(const Circuit& circuit, const ParamPoint& theta, std::size_t j);

/// All M derivative states, sharing the forward prefix.
std::vector<Statevector> derivative_states(const Circuit& circuit, const ParamPoint& theta);

}  // namespace plateau
