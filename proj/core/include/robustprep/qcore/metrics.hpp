// State-quality metrics: fidelity, purity, and the coherent/incoherent error
// split used to analyze prepared states.
#pragma once

#include "robustprep/qcore/types.hpp"

namespace robustprep {

// Pure-pure fidelity |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

// Pure-mixed fidelity tr(rho sigma) = <psi|sigma|psi>, clamped to [0, 1].
double fidelity(const StateVector& psi, const DensityMatrix& sigma);
double fidelity(const DensityMatrix& sigma, const StateVector& psi);

// Mixed-mixed fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 via Hermitian
// eigendecomposition, eigenvalues clamped at zero. Clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// For tomographic estimates the pure-target form tr(rho sigma) is used and
// the result is reported unclamped (shadow estimates can slightly exceed 1).
double fidelity(const StateVector& psi, const HermitianEstimate& sigma);
double fidelity(const DensityMatrix& rho, const HermitianEstimate& sigma);

// tr(m^2), real by hermiticity.
double purity(const DensityMatrix& m);
double purity(const HermitianEstimate& m);

// Coherent error of a measured state against a pure target:
//   1 - tr(rho rho') / sqrt(purity(rho')), clamped below at zero.
// Normalizing by the measured purity keeps the metric near zero under purely
// incoherent (depolarizing-style) noise, so it isolates the coherent part.
// Throws if the target is not pure (purity < 1 - 1e-9) or purity(rho') <= 0.
double coherent_error(const DensityMatrix& target, const HermitianEstimate& measured);

// Incoherent error strength: inverts purity(rho') = (1-p)^2 + 2(1-p)p/d + p^2/d
// for p in [0, 1]. Returns 0 when purity > 1; clamps to the nearest endpoint
// (with `clamped` set) when no root lies in [0, 1].
struct IncoherentStrength {
    double p = 0.0;
    bool clamped = false;
};
IncoherentStrength incoherent_strength(const DensityMatrix& target,
                                       const HermitianEstimate& measured);

}  // namespace robustprep
