#include "lhs/quantum_core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lhs {

namespace {

void check_square(const Matrix& m, std::size_t dim, const char* who) {
    if (m.rows() != static_cast<Eigen::Index>(dim) || m.cols() != static_cast<Eigen::Index>(dim)) {
        std::ostringstream os;
        os << who << ": matrix is " << m.rows() << "x" << m.cols()
           << " but the layout requires " << dim << "x" << dim;
        throw std::invalid_argument(os.str());
    }
}

void check_same_layout(const QubitLayout& a, const QubitLayout& b, const char* who) {
    if (a != b) {
        throw std::invalid_argument(std::string(who) + ": layout mismatch between state and observable");
    }
}

std::vector<std::string> concat_parties(const QubitLayout& a, const QubitLayout& b) {
    std::vector<std::string> parties = a.parties();
    parties.insert(parties.end(), b.parties().begin(), b.parties().end());
    return parties;
}

// Single-qubit operator embedded at `position` of an n-party register.
Matrix embed_single(const Matrix& op2, std::size_t n, std::size_t position) {
    const std::size_t left = std::size_t{1} << position;
    const std::size_t right = std::size_t{1} << (n - 1 - position);
    Matrix m = kron(Matrix::Identity(left, left), op2);
    return kron(m, Matrix::Identity(right, right));
}

Eigen::SelfAdjointEigenSolver<Matrix> solve_hermitian(const Matrix& m, bool vectors) {
    Eigen::SelfAdjointEigenSolver<Matrix> es;
    es.compute(m, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
    }
    return es;
}

} // namespace

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix identity2() {
    return Matrix::Identity(2, 2);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double max_abs_antihermitian_part(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianObservable::HermitianObservable(QubitLayout layout, Matrix matrix, std::string description)
    : layout_(std::move(layout)), matrix_(std::move(matrix)), description_(std::move(description)) {
    check_square(matrix_, layout_.dim(), "HermitianObservable");
    const double dev = max_abs_antihermitian_part(matrix_);
    if (dev > kHermitianTol) {
        std::ostringstream os;
        os << "HermitianObservable: not Hermitian (max deviation " << dev << ")";
        throw std::invalid_argument(os.str());
    }
    matrix_ = ((matrix_ + matrix_.adjoint()) / 2.0).eval();
}

QuantumState::QuantumState(QubitLayout layout, Matrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
    check_square(matrix_, layout_.dim(), "QuantumState");
    const double dev = max_abs_antihermitian_part(matrix_);
    if (dev > kHermitianTol) {
        std::ostringstream os;
        os << "QuantumState: not Hermitian (max deviation " << dev << ")";
        throw std::invalid_argument(os.str());
    }
    matrix_ = ((matrix_ + matrix_.adjoint()) / 2.0).eval();

    const Complex tr = matrix_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
        std::ostringstream os;
        os << "QuantumState: trace is " << tr.real() << " (must be 1 within " << kTraceTol << ")";
        throw std::invalid_argument(os.str());
    }

    const auto es = solve_hermitian(matrix_, /*vectors=*/false);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -kPsdSlack) {
        std::ostringstream os;
        os << "QuantumState: not positive semidefinite (smallest eigenvalue " << min_eig << ")";
        throw std::invalid_argument(os.str());
    }
}

QuantumState tensor(const QuantumState& a, const QuantumState& b) {
    return QuantumState(QubitLayout(concat_parties(a.layout(), b.layout())),
                        kron(a.matrix(), b.matrix()));
}

HermitianObservable tensor(const HermitianObservable& a, const HermitianObservable& b) {
    std::string desc;
    if (!a.description().empty() || !b.description().empty()) {
        desc = a.description() + " (x) " + b.description();
    }
    return HermitianObservable(QubitLayout(concat_parties(a.layout(), b.layout())),
                               kron(a.matrix(), b.matrix()), desc);
}

Matrix partial_trace_matrix(const Matrix& m, std::size_t n_parties,
                            const std::vector<std::size_t>& keep_positions) {
    const std::size_t n = n_parties;
    const std::size_t n_keep = keep_positions.size();
    const std::size_t n_traced = n - n_keep;
    const std::size_t dim_keep = std::size_t{1} << n_keep;
    const std::size_t dim_traced = std::size_t{1} << n_traced;

    std::vector<bool> kept(n, false);
    for (std::size_t pos : keep_positions) kept[pos] = true;

    std::vector<std::size_t> keep_bits, traced_bits;   // full-index bit positions
    for (std::size_t pos = 0; pos < n; ++pos) {
        (kept[pos] ? keep_bits : traced_bits).push_back(n - 1 - pos);
    }

    // Scatter tables: sub-index -> bits placed at their full-index positions.
    auto scatter_table = [](const std::vector<std::size_t>& bits) {
        const std::size_t m_bits = bits.size();
        std::vector<std::size_t> table(std::size_t{1} << m_bits, 0);
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
            std::size_t full = 0;
            for (std::size_t j = 0; j < m_bits; ++j) {
                if ((idx >> (m_bits - 1 - j)) & 1U) full |= std::size_t{1} << bits[j];
            }
            table[idx] = full;
        }
        return table;
    };
    const auto keep_scatter = scatter_table(keep_bits);
    const auto traced_scatter = scatter_table(traced_bits);

    Matrix out = Matrix::Zero(dim_keep, dim_keep);
    for (std::size_t r = 0; r < dim_keep; ++r) {
        for (std::size_t c = 0; c < dim_keep; ++c) {
            Complex sum(0, 0);
            for (std::size_t t = 0; t < dim_traced; ++t) {
                sum += m(keep_scatter[r] | traced_scatter[t], keep_scatter[c] | traced_scatter[t]);
            }
            out(r, c) = sum;
        }
    }
    return out;
}

QuantumState partial_trace(const QuantumState& state, const std::vector<std::string>& keep) {
    const QubitLayout sub = state.layout().keep(keep);   // validates the selection
    std::vector<std::size_t> positions;
    for (const auto& label : sub.parties()) {
        positions.push_back(state.layout().position_of(label));
    }
    Matrix reduced = partial_trace_matrix(state.matrix(), state.layout().size(), positions);
    return QuantumState(sub, std::move(reduced));
}

namespace {

Spectrum spectrum_of(const Matrix& m) {
    const auto es = solve_hermitian(m, /*vectors=*/true);
    const Eigen::Index d = m.rows();
    Spectrum s;
    s.eigenvalues.resize(d);
    s.eigenvectors.resize(d, d);
    // Eigen returns ascending order; flip to descending.
    for (Eigen::Index i = 0; i < d; ++i) {
        s.eigenvalues(i) = es.eigenvalues()(d - 1 - i);
        s.eigenvectors.col(i) = es.eigenvectors().col(d - 1 - i);
    }
    return s;
}

} // namespace

Spectrum eig_hermitian(const QuantumState& op) {
    return spectrum_of(op.matrix());
}

Spectrum eig_hermitian(const HermitianObservable& op) {
    return spectrum_of(op.matrix());
}

double expectation_matrix(const Matrix& rho, const Matrix& obs) {
    // Tr(rho * obs) without forming the product.
    const Complex tr = rho.cwiseProduct(obs.transpose()).sum();
    if (std::abs(tr.imag()) > 1e-10) {
        std::ostringstream os;
        os << "expectation: imaginary residue " << tr.imag() << " exceeds 1e-10";
        throw std::invalid_argument(os.str());
    }
    return tr.real();
}

double expectation(const QuantumState& state, const HermitianObservable& obs) {
    check_same_layout(state.layout(), obs.layout(), "expectation");
    return expectation_matrix(state.matrix(), obs.matrix());
}

double variance_matrix(const Matrix& rho, const Matrix& obs) {
    const double mean = expectation_matrix(rho, obs);
    const double second = expectation_matrix(rho, (obs * obs).eval());
    double var = second - mean * mean;
    if (var < -1e-10) {
        std::ostringstream os;
        os << "variance: negative value " << var << " beyond numerical slack";
        throw std::runtime_error(os.str());
    }
    return var < 0 ? 0.0 : var;
}

double variance(const QuantumState& state, const HermitianObservable& obs) {
    check_same_layout(state.layout(), obs.layout(), "variance");
    return variance_matrix(state.matrix(), obs.matrix());
}

HermitianObservable collective_spin(const QubitLayout& layout, const std::array<double, 3>& direction) {
    const double norm = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] +
                                  direction[2] * direction[2]);
    if (std::abs(norm - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "collective_spin: direction norm " << norm << " is not 1 within 1e-9";
        throw std::invalid_argument(os.str());
    }
    std::vector<std::string> all = layout.parties();
    return block_generator(layout, all, direction);
}

HermitianObservable block_generator(const QubitLayout& layout,
                                    const std::vector<std::string>& block,
                                    const std::array<double, 3>& direction) {
    if (block.empty()) {
        throw std::invalid_argument("block_generator: empty block");
    }
    const double norm = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] +
                                  direction[2] * direction[2]);
    if (std::abs(norm - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "block_generator: direction norm " << norm << " is not 1 within 1e-9";
        throw std::invalid_argument(os.str());
    }
    const Matrix spin_half =
        (direction[0] * pauli_x() + direction[1] * pauli_y() + direction[2] * pauli_z()) / 2.0;

    std::vector<bool> used(layout.size(), false);
    Matrix total = Matrix::Zero(layout.dim(), layout.dim());
    for (const auto& label : block) {
        const std::size_t pos = layout.position_of(label);   // rejects unknown labels
        if (used[pos]) {
            throw std::invalid_argument("block_generator: duplicate party label '" + label + "'");
        }
        used[pos] = true;
        total += embed_single(spin_half, layout.size(), pos);
    }

    std::ostringstream desc;
    desc << "spin(" << direction[0] << "," << direction[1] << "," << direction[2] << ") on {";
    for (std::size_t i = 0; i < block.size(); ++i) {
        desc << (i ? "," : "") << block[i];
    }
    desc << "}";
    return HermitianObservable(layout, std::move(total), desc.str());
}

} // namespace lhs
