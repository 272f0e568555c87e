#pragma once

#include "lhs/quantum_core.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lhs {

// GHZ state of N+1 qubits (one control qubit A plus N qubits for Bob) mixed
// with white noise of weight 1-p.
struct GhzParams {
    std::size_t n = 2;     // Bob's qubit count
    double p = 1.0;        // GHZ weight in [0,1]
    double phi = 0.0;      // GHZ phase (radians)
};

// rho^{AB} = (|up><up|_A (x) |Phi+><Phi+| + |down><down|_A (x) |Phi-><Phi-|)/2
// on parties {A, B1, B2}, with |Phi+-> = (|down down> +- |up up|)/sqrt(2).
// Unsteerable with a separable reduced state, yet no separable LHS model.
QuantumState build_bell_counterexample();

// p |GHZ_phi^{N+1}><GHZ_phi^{N+1}| + (1-p) I / 2^{N+1} on {A, B1..BN}.
// Dense construction; guarded at N+1 <= 12 qubits.
QuantumState build_noisy_ghz(const GhzParams& params);

// Closed-form lower bound p^2 N^2 / [p + 2(1-p)/2^N] on the conditional QFI
// of the noisy GHZ assemblage with the J_z generator.
double ghz_qcfi_lower(std::size_t n, double p);

// Closed-form upper bound (1-p) N_k (1 + p N_k) / 4 on the conditional
// variance of a size-N_k block of the noisy GHZ assemblage.
double ghz_qcv_upper(std::size_t n_k, double p);

// Smallest p in (0,1] where the closed-form QCFI lower bound exceeds the
// summed block bound 4 k * ghz_qcv_upper(N/k, p); k = 1 is the steering case
// (trivial partition). Empty when no violation occurs in (0,1].
std::optional<double> ghz_violation_threshold(std::size_t n, std::size_t k);

struct ScanRow {
    double p = 0.0;
    double qcfi_lower = 0.0;
    std::vector<double> rhs_per_k;      // 4 k * ghz_qcv_upper(N/k, p), per block count
    std::vector<double> fmax_per_wh;    // fmax_wh(N, w, h), per requested class
};

// Analytic sweep over p = i/(p_steps-1): the QCFI lower bound against the
// per-partition right-hand sides and the requested state-independent
// ceilings. Every block count must divide N.
std::vector<ScanRow> ghz_bound_scan(std::size_t n, const std::vector<std::size_t>& block_counts,
                               const std::vector<std::pair<std::size_t, std::size_t>>& wh_list,
                               std::size_t p_steps);

// CSV with header p,qcfi_lower,rhs_k<k>,...,fmax_w<w>h<h>,... and values at
// full precision, rows by ascending p.
std::string scan_to_csv(const std::vector<ScanRow>& rows,
                        const std::vector<std::size_t>& block_counts,
                        const std::vector<std::pair<std::size_t, std::size_t>>& wh_list);

} // namespace lhs
