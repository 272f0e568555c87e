#pragma once

#include "lhs/quantum_core.hpp"

namespace lhs {

// Eigenvalue-pair denominators at or below this cutoff are skipped in the
// quantum Fisher information sum. Rank-deficient states from projective
// conditioning are the common case; the limit is well defined term by term.
inline constexpr double kQfiSpectralCutoff = 1e-12;

struct QfiValue {
    double value = 0.0;
    double spectral_cutoff_used = kQfiSpectralCutoff;
};

// F_Q = 2 sum_{k,l} (lam_k - lam_l)^2 / (lam_k + lam_l) |<k|H|l>|^2 over the
// eigendecomposition of rho. Non-PSD inputs (beyond the usual slack) are
// rejected rather than clamped.
QfiValue qfi(const QuantumState& state, const HermitianObservable& gen);
double qfi_matrix(const Matrix& rho, const Matrix& gen, double cutoff = kQfiSpectralCutoff);

// Moment-based lower bound |<[H,M]>|^2 / Var[rho,M] on the QFI. Both the
// numerator and the variance below 1e-12 give 0 by convention; a vanishing
// variance with a surviving numerator is indeterminate and throws.
double squeezing_ratio(const QuantumState& state, const HermitianObservable& gen,
                       const HermitianObservable& meas);

// 4*Var[rho,H] - F_Q[rho,H]; nonnegative up to numerical slack.
double qfi_variance_gap(const QuantumState& state, const HermitianObservable& gen);

} // namespace lhs
