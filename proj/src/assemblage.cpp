#include "lhs/assemblage.hpp"

#include "lhs/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lhs {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_phi(double phi) {
    const double two_pi = 2.0 * kPi;
    double w = std::fmod(phi, two_pi);
    if (w < 0) w += two_pi;
    return w;
}

} // namespace

std::array<double, 3> MeasurementSetting::bloch_direction() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::pair<Eigen::Vector2cd, Eigen::Vector2cd> MeasurementSetting::spinors() const {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex e_phi = std::polar(1.0, phi);
    Eigen::Vector2cd plus, minus;
    plus << Complex(c, 0.0), e_phi * s;
    minus << -std::conj(e_phi) * s, Complex(c, 0.0);
    return {plus, minus};
}

std::pair<Matrix, Matrix> MeasurementSetting::projectors() const {
    const auto [plus, minus] = spinors();
    return {plus * plus.adjoint(), minus * minus.adjoint()};
}

MeasurementSetting MeasurementSetting::along_x() {
    return {kPi / 2.0, 0.0};
}

MeasurementSetting MeasurementSetting::along_y() {
    return {kPi / 2.0, kPi / 2.0};
}

std::vector<MeasurementSetting> SettingSearch::candidates() const {
    if (n_theta < 2 || n_phi < 2) {
        throw std::invalid_argument("SettingSearch: grid resolutions must be at least 2");
    }
    if (!(refine_tolerance > 0)) {
        throw std::invalid_argument("SettingSearch: refine_tolerance must be positive");
    }
    std::vector<MeasurementSetting> out = explicit_settings;
    out.reserve(out.size() + n_theta * n_phi);
    for (std::size_t i = 0; i < n_theta; ++i) {
        const double theta = kPi * static_cast<double>(i) / static_cast<double>(n_theta - 1);
        for (std::size_t j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_phi);
            out.push_back(MeasurementSetting{theta, phi});
        }
    }
    return out;
}

Assemblage condition(const QuantumState& rho_ab, const std::string& a_party,
                     const MeasurementSetting& setting) {
    const QubitLayout& layout = rho_ab.layout();
    const std::size_t pos = layout.position_of(a_party);
    if (layout.size() < 2) {
        throw std::invalid_argument("condition: no parties besides '" + a_party + "' to condition");
    }
    const QubitLayout b_layout = layout.without(a_party);
    const std::size_t bit = layout.bit_of_position(pos);
    const std::size_t dim_b = b_layout.dim();
    const Matrix& rho = rho_ab.matrix();

    // Insert the A bit into a B-only basis index.
    auto full_index = [bit](std::size_t a_bit, std::size_t b_index) {
        const std::size_t high = (b_index >> bit) << (bit + 1);
        const std::size_t low = b_index & ((std::size_t{1} << bit) - 1);
        return high | (a_bit << bit) | low;
    };

    const auto [plus, minus] = setting.spinors();
    Assemblage assemblage;
    assemblage.setting = setting;
    {
        std::ostringstream os;
        os << "rho^{AB} on";
        for (const auto& p : layout.parties()) os << " " << p;
        os << ", A = " << a_party;
        assemblage.source = os.str();
    }

    for (const Eigen::Vector2cd& v : {plus, minus}) {
        // Unnormalized conditional block (<v| (x) 1) rho (|v> (x) 1).
        Matrix block = Matrix::Zero(dim_b, dim_b);
        for (std::size_t i = 0; i < dim_b; ++i) {
            for (std::size_t j = 0; j < dim_b; ++j) {
                Complex sum(0, 0);
                for (std::size_t a = 0; a < 2; ++a) {
                    for (std::size_t b = 0; b < 2; ++b) {
                        sum += std::conj(v(a)) * v(b) * rho(full_index(a, i), full_index(b, j));
                    }
                }
                block(i, j) = sum;
            }
        }
        const double p = block.trace().real();
        ConditionalOutcome outcome;
        if (p <= kOutcomeProbabilityFloor) {
            outcome.probability = 0.0;
        } else {
            outcome.probability = p;
            outcome.state.emplace(b_layout, (block / p).eval());
        }
        assemblage.outcomes.push_back(std::move(outcome));
    }
    return assemblage;
}

namespace {

enum class OptimizeMode { maximize, minimize };

struct Objective {
    const QuantumState& rho_ab;
    const std::string& a_party;
    const std::function<double(const QuantumState&)>& per_state;

    double average(const MeasurementSetting& setting,
                   std::vector<std::pair<double, double>>* breakdown) const {
        const Assemblage assemblage = condition(rho_ab, a_party, setting);
        double avg = 0.0;
        if (breakdown) breakdown->clear();
        for (const auto& outcome : assemblage.outcomes) {
            double value = 0.0;
            if (outcome.state) {
                value = per_state(*outcome.state);
                avg += outcome.probability * value;
            }
            if (breakdown) breakdown->emplace_back(outcome.probability, value);
        }
        return avg;
    }
};

ConditionalValue optimize_over_settings(const QuantumState& rho_ab, const std::string& a_party,
                                        const std::function<double(const QuantumState&)>& per_state,
                                        OptimizeMode mode, const SettingSearch& search) {
    const std::vector<MeasurementSetting> grid = search.candidates();
    if (grid.empty()) {
        throw std::invalid_argument("setting search: empty search space");
    }
    const double sign = (mode == OptimizeMode::maximize) ? 1.0 : -1.0;
    const Objective objective{rho_ab, a_party, per_state};

    // Grid pass. Improvements within the tie window keep the earlier setting.
    constexpr double kTieWindow = 1e-12;
    MeasurementSetting best = grid.front();
    double best_score = sign * objective.average(best, nullptr);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double score = sign * objective.average(grid[i], nullptr);
        if (score > best_score + kTieWindow) {
            best_score = score;
            best = grid[i];
        }
    }

    // Pattern-search refinement: move while improving, halve the steps when
    // stuck, stop once the gain since the previous halving falls to at most
    // refine_tolerance.
    double step_theta = kPi / static_cast<double>(search.n_theta - 1) / 2.0;
    double step_phi = 2.0 * kPi / static_cast<double>(search.n_phi) / 2.0;
    double gained = std::numeric_limits<double>::infinity();
    const double min_step = 1e-9;
    std::size_t evals_left = 20000;   // hard determinism cap
    while ((step_theta > min_step || step_phi > min_step) && evals_left >= 4) {
        const MeasurementSetting moves[4] = {
            {std::clamp(best.theta + step_theta, 0.0, kPi), best.phi},
            {std::clamp(best.theta - step_theta, 0.0, kPi), best.phi},
            {best.theta, wrap_phi(best.phi + step_phi)},
            {best.theta, wrap_phi(best.phi - step_phi)},
        };
        bool moved = false;
        for (const auto& candidate : moves) {
            const double score = sign * objective.average(candidate, nullptr);
            --evals_left;
            if (score > best_score + kTieWindow) {
                gained += score - best_score;
                best_score = score;
                best = candidate;
                moved = true;
            }
        }
        if (!moved) {
            if (gained <= search.refine_tolerance) break;
            gained = 0.0;
            step_theta /= 2.0;
            step_phi /= 2.0;
        }
    }

    ConditionalValue result;
    result.optimizer = best;
    result.value = objective.average(best, &result.per_outcome);
    return result;
}

} // namespace

ConditionalValue qcfi(const QuantumState& rho_ab, const std::string& a_party,
                      const HermitianObservable& gen, const SettingSearch& search) {
    const QubitLayout b_layout = rho_ab.layout().without(a_party);
    if (gen.layout() != b_layout) {
        throw std::invalid_argument("qcfi: generator must act on Bob's layout");
    }
    auto per_state = [&gen](const QuantumState& s) { return qfi(s, gen).value; };
    return optimize_over_settings(rho_ab, a_party, per_state, OptimizeMode::maximize, search);
}

ConditionalValue qcv(const QuantumState& rho_ab, const std::string& a_party,
                     const std::vector<std::string>& block, const HermitianObservable& gen_block,
                     const SettingSearch& search) {
    if (block.empty()) {
        throw std::invalid_argument("qcv: empty block");
    }
    const QubitLayout b_layout = rho_ab.layout().without(a_party);
    const QubitLayout block_layout = b_layout.keep(block);
    if (gen_block.layout() != block_layout) {
        throw std::invalid_argument("qcv: generator must act on the block's reduced layout");
    }
    const bool full_block = block_layout == b_layout;
    auto per_state = [&](const QuantumState& s) {
        if (full_block) return variance(s, gen_block);
        return variance(partial_trace(s, block_layout.parties()), gen_block);
    };
    return optimize_over_settings(rho_ab, a_party, per_state, OptimizeMode::minimize, search);
}

ConditionalValue conditional_functional(const QuantumState& rho_ab, const std::string& a_party,
                                        const std::function<double(const QuantumState&)>& functional,
                                        const SettingSearch& search) {
    if (!functional) {
        throw std::invalid_argument("conditional_functional: missing functional");
    }
    return optimize_over_settings(rho_ab, a_party, functional, OptimizeMode::maximize, search);
}

double negativity(const QuantumState& state, const std::vector<std::string>& cut_first) {
    const QubitLayout& layout = state.layout();
    const QubitLayout cut_layout = layout.keep(cut_first);   // validates the labels
    if (cut_layout.size() == layout.size()) {
        throw std::invalid_argument("negativity: cut must leave a nonempty complement");
    }

    std::size_t mask = 0;
    for (const auto& label : cut_layout.parties()) {
        mask |= std::size_t{1} << layout.bit_of_position(layout.position_of(label));
    }

    const std::size_t dim = layout.dim();
    const Matrix& rho = state.matrix();
    Matrix pt(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            const std::size_t rr = (r & ~mask) | (c & mask);
            const std::size_t cc = (c & ~mask) | (r & mask);
            pt(r, c) = rho(rr, cc);
        }
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es(pt, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("negativity: eigensolver failed to converge");
    }
    const double trace_norm = es.eigenvalues().cwiseAbs().sum();
    return std::max(0.0, (trace_norm - 1.0) / 2.0);
}

} // namespace lhs
