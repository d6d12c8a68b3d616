// Arithmetic state decomposition: exact preparation of an arbitrary target
// via uniformly controlled RY (magnitudes) and RZ (phases) rotations, each
// expanded into 2^k rotations + 2^k CNOTs with the Gray-code construction.
#pragma once

#include "robustprep/qcore/circuit.hpp"
#include "robustprep/qcore/types.hpp"

namespace robustprep::prep {

// Parameter-free circuit (fixed-angle RY/RZ and CNOT only) mapping |0...0>
// to the target up to global phase. Multiplexers whose angles are all zero
// are pruned, so e.g. |0...0> yields an empty circuit.
Circuit mottonen_decompose(const StateVector& target);

}  // namespace robustprep::prep
