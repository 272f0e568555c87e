#pragma once

#include "lhs/quantum_core.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lhs {

// Outcomes below this probability are recorded with probability 0 and no
// conditional state; they are excluded from all averages.
inline constexpr double kOutcomeProbabilityFloor = 1e-12;

// Rank-1 projective measurement of Alice's qubit along the Bloch direction
// (sin t cos p, sin t sin p, cos t). The two projectors are onto the +/-
// spin states of that direction.
struct MeasurementSetting {
    double theta = 0.0;          // [0, pi]
    double phi = 0.0;            // [0, 2*pi)

    std::array<double, 3> bloch_direction() const;
    // Spinors of the +/- outcomes in the (up, down) basis.
    std::pair<Eigen::Vector2cd, Eigen::Vector2cd> spinors() const;
    // 2x2 projectors {plus, minus}; orthogonal, rank one, summing to identity.
    std::pair<Matrix, Matrix> projectors() const;

    static MeasurementSetting along_z() { return {0.0, 0.0}; }
    static MeasurementSetting along_x();
    static MeasurementSetting along_y();
};

struct ConditionalOutcome {
    double probability = 0.0;
    std::optional<QuantumState> state;   // absent when the outcome never occurs
};

// Conditional decomposition of Bob's system for one measurement setting on A.
struct Assemblage {
    MeasurementSetting setting;
    std::vector<ConditionalOutcome> outcomes;   // + outcome first
    std::string source;
};

// Exhaustive (theta, phi) grid followed by derivative-free local refinement.
// theta runs over n_theta points including both poles; phi over n_phi points
// with the periodic endpoint excluded. Explicit settings are always added to
// the candidate set, ahead of the grid.
struct SettingSearch {
    std::size_t n_theta = 64;
    std::size_t n_phi = 32;
    double refine_tolerance = 1e-6;
    std::vector<MeasurementSetting> explicit_settings;

    std::vector<MeasurementSetting> candidates() const;
};

// Value of a setting-optimized conditional functional together with the
// optimizing setting and its per-outcome breakdown.
struct ConditionalValue {
    double value = 0.0;
    MeasurementSetting optimizer;
    std::vector<std::pair<double, double>> per_outcome;   // (probability, functional value)
};

// Conditional states of everything except `a_party` after measuring `setting`
// on `a_party`.
Assemblage condition(const QuantumState& rho_ab, const std::string& a_party,
                     const MeasurementSetting& setting);

// max_X sum_a p(a) F_Q[rho^B_a, gen] over the searched settings.
ConditionalValue qcfi(const QuantumState& rho_ab, const std::string& a_party,
                      const HermitianObservable& gen, const SettingSearch& search);

// min_X sum_a p(a) Var[reduce(rho^B_a, block), gen_block] over the searched
// settings; gen_block lives on the block's reduced layout.
ConditionalValue qcv(const QuantumState& rho_ab, const std::string& a_party,
                     const std::vector<std::string>& block, const HermitianObservable& gen_block,
                     const SettingSearch& search);

// max_X sum_a p(a) f(rho^B_a) for a caller-supplied convex functional.
ConditionalValue conditional_functional(const QuantumState& rho_ab, const std::string& a_party,
                                        const std::function<double(const QuantumState&)>& functional,
                                        const SettingSearch& search);

// (||rho^{T_cut}||_1 - 1) / 2 for the partial transpose across
// cut_first | rest. Zero on all product states, positive only on entangled
// ones.
double negativity(const QuantumState& state, const std::vector<std::string>& cut_first);

} // namespace lhs
