#include "fockforge/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fockforge {

namespace {

void check_hermitian(const Eigen::MatrixXcd& h, const char* who) {
    if (h.rows() != h.cols())
        throw std::invalid_argument(std::string(who) + ": matrix must be square");
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian");
}

int permutation_parity(const std::vector<int>& perm) {
    int inversions = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b]) ++inversions;
    return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Eigen::MatrixXcd dense_expm(const Eigen::MatrixXcd& hamiltonian, double t) {
    check_hermitian(hamiltonian, "dense_expm");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dense_expm: eigendecomposition failed");
    const Eigen::VectorXd& lam = es.eigenvalues();
    Eigen::VectorXcd phases(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k)
        phases(k) = std::exp(Complex(0.0, -lam(k) * t));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::VectorXd exact_spectrum(const Eigen::MatrixXcd& hamiltonian) {
    check_hermitian(hamiltonian, "exact_spectrum");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("exact_spectrum: eigendecomposition failed");
    return es.eigenvalues();
}

Complex brute_force_antisym_overlap(const Eigen::MatrixXcd& c,
                                    const std::vector<int>& j,
                                    const std::vector<int>& b) {
    const std::size_t n = j.size();
    if (b.size() != n)
        throw std::invalid_argument("brute_force_antisym_overlap: tuple sizes differ");
    if (n > 6)
        throw std::invalid_argument("brute_force_antisym_overlap: N > 6 (factorial cost)");
    for (int idx : j)
        if (idx < 1 || idx > c.rows())
            throw std::out_of_range("brute_force_antisym_overlap: row index out of range");
    for (int idx : b)
        if (idx < 1 || idx > c.cols())
            throw std::out_of_range("brute_force_antisym_overlap: column index out of range");

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Complex sum = 0.0;
    do {
        Complex term = static_cast<double>(permutation_parity(perm));
        for (std::size_t i = 0; i < n; ++i)
            term *= c(j[i] - 1, b[perm[i]] - 1);
        sum += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

Eigen::MatrixXcd first_quant_hamiltonian_dense(int m, int n, const KineticMatrix& t,
                                               const PotentialField& v,
                                               const PairInteraction& w) {
    if (m < 1 || n < 0)
        throw std::invalid_argument("first_quant_hamiltonian_dense: bad dimensions");
    if (t.sites() != m || v.size() != m || w.sites() != m)
        throw std::invalid_argument("first_quant_hamiltonian_dense: ingredient sizes disagree");

    std::size_t dim = 1;
    for (int i = 0; i < n; ++i) {
        dim *= static_cast<std::size_t>(m);
        if (dim > kMaxFirstQuantDim)
            throw SizeGuardError("first_quant_hamiltonian_dense: M^N exceeds 2^20");
    }

    // Strides for row-major tuples with particle 1 slowest.
    std::vector<std::size_t> stride(n);
    for (int i = 0; i < n; ++i) {
        std::size_t s = 1;
        for (int k = i + 1; k < n; ++k) s *= static_cast<std::size_t>(m);
        stride[i] = s;
    }

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<int> tuple(n, 0);  // 0-based site digits
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t rem = col;
        for (int i = 0; i < n; ++i) {
            tuple[i] = static_cast<int>(rem / stride[i]);
            rem %= stride[i];
        }

        double diag = 0.0;
        for (int i = 0; i < n; ++i) diag += v(tuple[i]);
        for (int i = 0; i < n; ++i)
            for (int k = i + 1; k < n; ++k) diag += w.values(tuple[i], tuple[k]);
        h(col, col) += diag;

        for (int i = 0; i < n; ++i)
            for (int x = 0; x < m; ++x) {
                const std::ptrdiff_t delta =
                    static_cast<std::ptrdiff_t>(x - tuple[i]) *
                    static_cast<std::ptrdiff_t>(stride[i]);
                h(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(col) + delta), col) +=
                    t.entries(x, tuple[i]);
            }
    }
    return h;
}

}  // namespace fockforge
