#include "lhs/scenarios.hpp"

#include "lhs/partitions.hpp"
#include "lhs/state_io.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lhs {

namespace {

std::vector<std::string> ab_party_labels(std::size_t n) {
    std::vector<std::string> parties{"A"};
    for (std::size_t i = 1; i <= n; ++i) {
        parties.push_back("B" + std::to_string(i));
    }
    return parties;
}

} // namespace

QuantumState build_bell_counterexample() {
    // Single-qubit basis: e0 = |up>, e1 = |down>.
    Vector up = Vector::Zero(2), down = Vector::Zero(2);
    up(0) = 1.0;
    down(1) = 1.0;

    // Two-qubit Bell states (|down down> +- |up up>)/sqrt(2).
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Vector phi_plus = Vector::Zero(4), phi_minus = Vector::Zero(4);
    phi_plus(3) = inv_sqrt2;
    phi_plus(0) = inv_sqrt2;
    phi_minus(3) = inv_sqrt2;
    phi_minus(0) = -inv_sqrt2;

    const Matrix rho = 0.5 * (kron((up * up.adjoint()).eval(), (phi_plus * phi_plus.adjoint()).eval()) +
                              kron((down * down.adjoint()).eval(), (phi_minus * phi_minus.adjoint()).eval()));
    return QuantumState(QubitLayout({"A", "B1", "B2"}), rho);
}

QuantumState build_noisy_ghz(const GhzParams& params) {
    if (params.n < 1) {
        throw std::invalid_argument("build_noisy_ghz: Bob needs at least one qubit");
    }
    if (params.n + 1 > 12) {
        throw std::invalid_argument("build_noisy_ghz: dense construction limited to 12 qubits total");
    }
    if (params.p < 0.0 || params.p > 1.0) {
        throw std::invalid_argument("build_noisy_ghz: mixing weight must lie in [0,1]");
    }

    const std::size_t dim = std::size_t{1} << (params.n + 1);
    Vector ghz = Vector::Zero(dim);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    ghz(dim - 1) = inv_sqrt2;                                  // all spins down
    ghz(0) = std::polar(inv_sqrt2, params.phi);                // all spins up, phased

    Matrix rho = params.p * (ghz * ghz.adjoint());
    rho += ((1.0 - params.p) / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
    return QuantumState(QubitLayout(ab_party_labels(params.n)), std::move(rho));
}

double ghz_qcfi_lower(std::size_t n, double p) {
    if (n < 1) {
        throw std::invalid_argument("ghz_qcfi_lower: N must be at least 1");
    }
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("ghz_qcfi_lower: mixing weight must lie in [0,1]");
    }
    if (p == 0.0) return 0.0;
    const double nn = static_cast<double>(n);
    const double tail = (n < 1060) ? 2.0 * (1.0 - p) * std::ldexp(1.0, -static_cast<int>(n)) : 0.0;
    return p * p * nn * nn / (p + tail);
}

double ghz_qcv_upper(std::size_t n_k, double p) {
    if (n_k < 1) {
        throw std::invalid_argument("ghz_qcv_upper: block size must be at least 1");
    }
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("ghz_qcv_upper: mixing weight must lie in [0,1]");
    }
    const double nk = static_cast<double>(n_k);
    return (1.0 - p) * nk * (1.0 + p * nk) / 4.0;
}

std::optional<double> ghz_violation_threshold(std::size_t n, std::size_t k) {
    if (k < 1) {
        throw std::invalid_argument("ghz_violation_threshold: k must be at least 1");
    }
    if (n % k != 0) {
        std::ostringstream os;
        os << "ghz_violation_threshold: k=" << k << " does not divide N=" << n;
        throw std::invalid_argument(os.str());
    }
    const std::size_t n_k = n / k;
    auto margin = [&](double p) {
        return ghz_qcfi_lower(n, p) - 4.0 * static_cast<double>(k) * ghz_qcv_upper(n_k, p);
    };

    // Coarse scan for the first sign change, then bisection.
    const std::size_t scan_steps = 4096;
    double lo = 0.0;
    double hi = 0.0;
    bool found = false;
    double prev_p = 0.0;
    double prev_margin = margin(0.0);
    for (std::size_t i = 1; i <= scan_steps; ++i) {
        const double p = static_cast<double>(i) / static_cast<double>(scan_steps);
        const double m = margin(p);
        if (prev_margin <= 0.0 && m > 0.0) {
            lo = prev_p;
            hi = p;
            found = true;
            break;
        }
        prev_p = p;
        prev_margin = m;
    }
    if (!found) {
        return std::nullopt;
    }
    while (hi - lo > 1e-10) {
        const double mid = (lo + hi) / 2.0;
        if (margin(mid) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return (lo + hi) / 2.0;
}

std::vector<ScanRow> ghz_bound_scan(std::size_t n, const std::vector<std::size_t>& block_counts,
                               const std::vector<std::pair<std::size_t, std::size_t>>& wh_list,
                               std::size_t p_steps) {
    if (p_steps < 2) {
        throw std::invalid_argument("ghz_bound_scan: need at least two p steps");
    }
    for (std::size_t k : block_counts) {
        if (k < 1 || n % k != 0) {
            std::ostringstream os;
            os << "ghz_bound_scan: block count " << k << " does not divide N=" << n;
            throw std::invalid_argument(os.str());
        }
    }
    for (const auto& [w, h] : wh_list) {
        fmax_wh(n, w, h);   // validates the range
    }

    std::vector<ScanRow> rows;
    rows.reserve(p_steps);
    for (std::size_t i = 0; i < p_steps; ++i) {
        ScanRow row;
        row.p = static_cast<double>(i) / static_cast<double>(p_steps - 1);
        row.qcfi_lower = ghz_qcfi_lower(n, row.p);
        for (std::size_t k : block_counts) {
            row.rhs_per_k.push_back(4.0 * static_cast<double>(k) * ghz_qcv_upper(n / k, row.p));
        }
        for (const auto& [w, h] : wh_list) {
            row.fmax_per_wh.push_back(fmax_wh(n, w, h));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows,
                        const std::vector<std::size_t>& block_counts,
                        const std::vector<std::pair<std::size_t, std::size_t>>& wh_list) {
    std::ostringstream os;
    os << "p,qcfi_lower";
    for (std::size_t k : block_counts) os << ",rhs_k" << k;
    for (const auto& [w, h] : wh_list) os << ",fmax_w" << w << "h" << h;
    os << "\n";
    for (const auto& row : rows) {
        if (row.rhs_per_k.size() != block_counts.size() ||
            row.fmax_per_wh.size() != wh_list.size()) {
            throw std::invalid_argument("scan_to_csv: row shape does not match the column lists");
        }
        os << format_g17(row.p) << "," << format_g17(row.qcfi_lower);
        for (double v : row.rhs_per_k) os << "," << format_g17(v);
        for (double v : row.fmax_per_wh) os << "," << format_g17(v);
        os << "\n";
    }
    return os.str();
}

} // namespace lhs
