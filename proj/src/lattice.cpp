#include "fockforge/lattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fockforge {

namespace {

void check_site(const LatticeSpec& spec, int p, const char* who) {
    if (p < 1 || p > spec.sites)
        throw std::out_of_range(std::string(who) + ": site index " + std::to_string(p) +
                                " out of range 1.." + std::to_string(spec.sites));
}

bool is_hermitian(const Eigen::MatrixXcd& a, double tol) {
    return a.rows() == a.cols() && (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

LatticeSpec::LatticeSpec(int sites_, Geometry geometry_, double spacing_)
    : sites(sites_), geometry(geometry_), spacing(spacing_) {
    if (sites < 2) throw std::invalid_argument("LatticeSpec: need at least 2 sites");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw std::invalid_argument("LatticeSpec: spacing must be positive");
}

double distance(const LatticeSpec& spec, int p, int q) {
    check_site(spec, p, "distance");
    check_site(spec, q, "distance");
    const int d = std::abs(p - q);
    if (spec.geometry == Geometry::Line) return d * spec.spacing;
    return std::min(d, spec.sites - d) * spec.spacing;
}

KineticMatrix::KineticMatrix(Eigen::MatrixXcd entries_, bool time_reversal_broken_)
    : entries(std::move(entries_)), time_reversal_broken(time_reversal_broken_) {
    if (entries.rows() != entries.cols())
        throw std::invalid_argument("KineticMatrix: matrix must be square");
    if (!is_hermitian(entries, 1e-12))
        throw std::invalid_argument("KineticMatrix: matrix is not Hermitian");
    if (!time_reversal_broken && entries.imag().cwiseAbs().maxCoeff() != 0.0)
        throw std::invalid_argument(
            "KineticMatrix: complex entries require time_reversal_broken");
}

KineticMatrix build_ring_kinetic(const LatticeSpec& spec, double hopping) {
    if (spec.geometry != Geometry::Ring)
        throw std::invalid_argument("build_ring_kinetic: spec geometry is not ring");
    const int m = spec.sites;
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(m, m);
    for (int n = 0; n < m; ++n) {
        const int nn = (n + 1) % m;
        t(n, nn) = -hopping;
        t(nn, n) = -hopping;
    }
    return KineticMatrix(std::move(t));
}

KineticMatrix build_line_kinetic(const LatticeSpec& spec, double hopping) {
    if (spec.geometry != Geometry::Line)
        throw std::invalid_argument("build_line_kinetic: spec geometry is not line");
    const int m = spec.sites;
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(m, m);
    for (int n = 0; n + 1 < m; ++n) {
        t(n, n + 1) = -hopping;
        t(n + 1, n) = -hopping;
    }
    return KineticMatrix(std::move(t));
}

PairInteraction coulomb_interaction(const LatticeSpec& spec, double strength) {
    if (strength < 0.0) throw std::invalid_argument("coulomb_interaction: strength < 0");
    const int m = spec.sites;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, m);
    for (int p = 1; p <= m; ++p)
        for (int q = p + 1; q <= m; ++q) {
            const double v = strength / distance(spec, p, q);
            w(p - 1, q - 1) = v;
            w(q - 1, p - 1) = v;
        }
    return PairInteraction{std::move(w), InteractionForm::Coulomb, strength, spec};
}

PairInteraction tabulated_interaction(Eigen::MatrixXd values) {
    if (values.rows() != values.cols())
        throw std::invalid_argument("tabulated_interaction: matrix must be square");
    if ((values - values.transpose()).cwiseAbs().maxCoeff() != 0.0)
        throw std::invalid_argument("tabulated_interaction: matrix must be symmetric");
    if (values.diagonal().cwiseAbs().maxCoeff() != 0.0)
        throw std::invalid_argument("tabulated_interaction: diagonal must be zero");
    const int m = static_cast<int>(values.rows());
    return PairInteraction{std::move(values), InteractionForm::Tabulated, 0.0,
                           LatticeSpec(std::max(m, 2), Geometry::Line, 1.0)};
}

Eigen::MatrixXcd dft_matrix(int m) {
    if (m < 1) throw std::invalid_argument("dft_matrix: m < 1");
    const double norm = 1.0 / std::sqrt(static_cast<double>(m));
    Eigen::MatrixXcd c(m, m);
    for (int k = 0; k < m; ++k)
        for (int n = 0; n < m; ++n) {
            const double angle = -2.0 * std::numbers::pi * k * n / m;
            c(k, n) = norm * std::exp(Complex(0.0, angle));
        }
    return c;
}

namespace {

// Exact pattern match for a matrix produced by build_ring_kinetic with
// nonzero hopping: zero diagonal, one real value on every (n, n+1 mod M)
// link, zero elsewhere.
bool is_ring_kinetic_pattern(const Eigen::MatrixXcd& t, double& link) {
    const int m = static_cast<int>(t.rows());
    if (t.imag().cwiseAbs().maxCoeff() != 0.0) return false;
    const double v = t(0, 1).real();
    if (v == 0.0) return false;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const int d = std::abs(i - j);
            const bool neighbour = (d == 1) || (d == m - 1);
            const double expect = neighbour ? v : 0.0;
            if (t(i, j) != Complex(expect, 0.0)) return false;
        }
    link = v;
    return true;
}

}  // namespace

MomentumTransform momentum_transform(const KineticMatrix& kinetic) {
    const Eigen::MatrixXcd& t = kinetic.entries;
    const int m = kinetic.sites();
    if ((t - t.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("momentum_transform: matrix is not Hermitian");

    // Exactly diagonal input: the identity already diagonalizes it.
    bool diagonal = true;
    for (int i = 0; i < m && diagonal; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && t(i, j) != Complex(0.0, 0.0)) { diagonal = false; break; }
    if (diagonal) {
        return MomentumTransform{Eigen::MatrixXcd::Identity(m, m),
                                 t.diagonal().real(), false};
    }

    // Ring hopping: the DFT is the exact eigenbasis, kept so degenerate ±k
    // pairs resolve deterministically.
    double link = 0.0;
    if (is_ring_kinetic_pattern(t, link)) {
        Eigen::VectorXd evals(m);
        for (int k = 0; k < m; ++k) {
            evals(k) = (m == 2) ? (k == 0 ? link : -link)
                                : 2.0 * link * std::cos(2.0 * std::numbers::pi * k / m);
        }
        return MomentumTransform{dft_matrix(m), std::move(evals), true};
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(t);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("momentum_transform: eigendecomposition failed");
    return MomentumTransform{es.eigenvectors(), es.eigenvalues(), false};
}

}  // namespace fockforge
