#pragma once

#include "lhs/layout.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace lhs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Validation tolerances for operator types. Constructors symmetrize
// ((M + M^dag)/2) after the Hermiticity check, so downstream rounding from
// measurement conditioning cannot push a state out of its own invariants.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdSlack = 1e-10;   // smallest eigenvalue >= -kPsdSlack

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix identity2();

// Kronecker product with the left factor owning the more significant bits.
Matrix kron(const Matrix& a, const Matrix& b);

double max_abs_antihermitian_part(const Matrix& m);

// Hermitian operator on a qubit register. Hermiticity is enforced at
// construction (tolerance kHermitianTol on the max entry deviation).
class HermitianObservable {
public:
    HermitianObservable(QubitLayout layout, Matrix matrix, std::string description = "");

    const QubitLayout& layout() const { return layout_; }
    const Matrix& matrix() const { return matrix_; }
    const std::string& description() const { return description_; }

private:
    QubitLayout layout_;
    Matrix matrix_;
    std::string description_;
};

// Density operator on a qubit register: Hermitian within kHermitianTol,
// unit trace within kTraceTol, smallest eigenvalue >= -kPsdSlack.
class QuantumState {
public:
    QuantumState(QubitLayout layout, Matrix matrix);

    const QubitLayout& layout() const { return layout_; }
    const Matrix& matrix() const { return matrix_; }

private:
    QubitLayout layout_;
    Matrix matrix_;
};

// Eigendecomposition of a Hermitian operator, eigenvalues descending.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;   // orthonormal columns, same order as eigenvalues
};

QuantumState tensor(const QuantumState& a, const QuantumState& b);
HermitianObservable tensor(const HermitianObservable& a, const HermitianObservable& b);

// Reduced state on `keep` (subset of the layout's parties, kept in original
// order). Trace preserving and linear.
QuantumState partial_trace(const QuantumState& state, const std::vector<std::string>& keep);

Spectrum eig_hermitian(const QuantumState& op);
Spectrum eig_hermitian(const HermitianObservable& op);

// Tr(rho * obs); the imaginary residue must stay below 1e-10 and is dropped.
double expectation(const QuantumState& state, const HermitianObservable& obs);

// <obs^2> - <obs>^2, clamped to 0 when within -1e-10 of zero.
double variance(const QuantumState& state, const HermitianObservable& obs);

// Sum_i (n_x sigma_x^(i) + n_y sigma_y^(i) + n_z sigma_z^(i)) / 2 over all
// parties; `direction` must be unit within 1e-9.
HermitianObservable collective_spin(const QubitLayout& layout, const std::array<double, 3>& direction);

// Collective spin restricted to `block`, identity on the other parties.
HermitianObservable block_generator(const QubitLayout& layout,
                                    const std::vector<std::string>& block,
                                    const std::array<double, 3>& direction);

// Matrix-level primitives shared by the typed operations above. They act on
// raw Hermitian matrices so callers are not forced into qubit registers.
Matrix partial_trace_matrix(const Matrix& m, std::size_t n_parties,
                            const std::vector<std::size_t>& keep_positions);
double expectation_matrix(const Matrix& rho, const Matrix& obs);
double variance_matrix(const Matrix& rho, const Matrix& obs);

} // namespace lhs
