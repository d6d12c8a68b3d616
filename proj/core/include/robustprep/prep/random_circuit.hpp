// Seeded random circuit generation for gradient checks.
#pragma once

#include <cstdint>

#include "robustprep/qcore/circuit.hpp"

namespace robustprep::prep {

// Random circuit mixing parameterized rotations (occasionally sharing a
// parameter index when allow_shared is set), fixed-angle rotations, and plain
// gates; every parameter index in [0, n_params) is referenced at least once.
// Disable sharing for consumers that assume one gate per parameter (the
// single-shift parameter-shift rule).
Circuit random_circuit(int n_qubits, int n_params, int extra_ops, std::uint64_t seed,
                       bool allow_shared = true);

}  // namespace robustprep::prep
