#pragma once

#include "lhs/assemblage.hpp"
#include "lhs/partitions.hpp"
#include "lhs/quantum_core.hpp"

#include <string>
#include <utility>
#include <vector>

namespace lhs {

// A criterion counts as violated only when the margin clears this tolerance;
// restricted searches make the left side a lower bound, so false positives
// would require numerical error rather than optimization error.
inline constexpr double kDecisionTolerance = 1e-9;

struct CriterionReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool violated = false;
    double margin = 0.0;   // lhs - rhs
    std::vector<std::pair<std::string, MeasurementSetting>> witnesses;
    std::string inputs_digest;
    std::string provenance;
    std::string note;      // optional extra context (e.g. trivially satisfied)
};

// F_Q^{B|A}[A,H] <= 4 sum_k VarQ^{Bk|A}[A,H^{Bk}] for the collective spin H
// along `direction`; violation excludes every LHS model whose hidden states
// are separable in `partition`.
CriterionReport lambda_sep_test(const QuantumState& rho_ab, const std::string& a_party,
                                const Partition& partition, const std::array<double, 3>& direction,
                                const SettingSearch& search);

// The trivial-partition limit: F_Q^{B|A} <= 4 VarQ^{B|A}; violation certifies
// steering from A to B.
CriterionReport steering_test(const QuantumState& rho_ab, const std::string& a_party,
                              const std::array<double, 3>& direction, const SettingSearch& search);

// Assistance-free limit on Bob's reduced state: F_Q[rho^B,H] <= 4 sum_k
// Var[rho^{Bk},H^{Bk}]; violation certifies entanglement of rho^B in
// `partition`.
CriterionReport reduced_sep_test(const QuantumState& rho_b, const Partition& partition,
                                 const std::array<double, 3>& direction);

// Moment-based variant: |<[H,M]>_{rho^B}|^2 / 4 <= (sum_k VarQ^{Bk|A}) *
// VarQ^{B|A}[A,M]. A vanishing commutator expectation makes the test
// trivially satisfied.
CriterionReport reid_sep_test(const QuantumState& rho_ab, const std::string& a_party,
                              const Partition& partition, const std::array<double, 3>& gen_direction,
                              const HermitianObservable& meas_obs, const SettingSearch& search);

// State-independent bound F_Q^{B|A}[A,J_z] <= w(N-h)+N for (w,h)-separable
// hidden states.
CriterionReport wh_sep_test(const QuantumState& rho_ab, const std::string& a_party, std::size_t w,
                            std::size_t h, const SettingSearch& search);

// Conditional negativity across `cut_first` | rest; any positive value rules
// out every separable LHS model.
CriterionReport assisted_entanglement_test(const QuantumState& rho_ab, const std::string& a_party,
                                           const std::vector<std::string>& cut_first,
                                           const SettingSearch& search);

// Line-oriented key: value rendering with numbers at full precision.
std::string format_report(const CriterionReport& report);

} // namespace lhs
