#include "lhs/metrology.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lhs {

double qfi_matrix(const Matrix& rho, const Matrix& gen, double cutoff) {
    if (rho.rows() != rho.cols() || gen.rows() != gen.cols() || rho.rows() != gen.rows()) {
        throw std::invalid_argument("qfi: dimension mismatch between state and generator");
    }
    if (max_abs_antihermitian_part(rho) > kHermitianTol ||
        max_abs_antihermitian_part(gen) > kHermitianTol) {
        throw std::invalid_argument("qfi: inputs must be Hermitian");
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("qfi: eigensolver failed to converge");
    }
    const Eigen::VectorXd& lam = es.eigenvalues();
    if (lam.minCoeff() < -kPsdSlack) {
        std::ostringstream os;
        os << "qfi: state is not positive semidefinite (smallest eigenvalue " << lam.minCoeff()
           << ")";
        throw std::invalid_argument(os.str());
    }

    const Matrix g = es.eigenvectors().adjoint() * gen * es.eigenvectors();
    const Eigen::Index d = rho.rows();
    double total = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
            if (k == l) continue;
            const double sum = lam(k) + lam(l);
            if (sum <= cutoff) continue;
            const double diff = lam(k) - lam(l);
            total += 2.0 * diff * diff / sum * std::norm(g(k, l));
        }
    }
    return total;
}

QfiValue qfi(const QuantumState& state, const HermitianObservable& gen) {
    if (state.layout() != gen.layout()) {
        throw std::invalid_argument("qfi: layout mismatch between state and generator");
    }
    return QfiValue{qfi_matrix(state.matrix(), gen.matrix()), kQfiSpectralCutoff};
}

double squeezing_ratio(const QuantumState& state, const HermitianObservable& gen,
                       const HermitianObservable& meas) {
    if (state.layout() != gen.layout() || state.layout() != meas.layout()) {
        throw std::invalid_argument("squeezing_ratio: layout mismatch");
    }
    const Matrix commutator = gen.matrix() * meas.matrix() - meas.matrix() * gen.matrix();
    // <[H,M]> is anti-Hermitian-valued, so keep the full complex trace here.
    const Complex avg = state.matrix().cwiseProduct(commutator.transpose()).sum();
    const double numerator = std::norm(avg);
    const double denominator = variance(state, meas);
    if (denominator <= 1e-12) {
        if (numerator <= 1e-12) return 0.0;
        std::ostringstream os;
        os << "squeezing_ratio: indeterminate, variance " << denominator
           << " vanishes while |<[H,M]>|^2 = " << numerator;
        throw std::domain_error(os.str());
    }
    return numerator / denominator;
}

double qfi_variance_gap(const QuantumState& state, const HermitianObservable& gen) {
    return 4.0 * variance(state, gen) - qfi(state, gen).value;
}

} // namespace lhs
