#include "fockforge/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fockforge/lattice.hpp"
#include "fockforge/oracle.hpp"
#include "fockforge/rng.hpp"

namespace fockforge {

namespace {

const Eigen::Matrix2cd& hadamard() {
    static const Eigen::Matrix2cd h = [] {
        Eigen::Matrix2cd m;
        const double s = 1.0 / std::sqrt(2.0);
        m << s, s, s, -s;
        return m;
    }();
    return h;
}

Eigen::VectorXd born_distribution(const Eigen::VectorXcd& joint, int blocks,
                                  int block_size, bool block_major) {
    // block_major: outcome index is the slow index of the joint vector.
    Eigen::VectorXd dist = Eigen::VectorXd::Zero(blocks);
    for (int b = 0; b < blocks; ++b)
        for (int s = 0; s < block_size; ++s) {
            const Eigen::Index idx = block_major
                                         ? static_cast<Eigen::Index>(b) * block_size + s
                                         : static_cast<Eigen::Index>(s) * blocks + b;
            dist(b) += std::norm(joint(idx));
        }
    return dist;
}

double float_gcd(double a, double b) {
    a = std::abs(a);
    b = std::abs(b);
    while (b > 1e-9 * std::max(1.0, a)) {
        const double r = std::fmod(a, b);
        a = b;
        b = r;
    }
    return a;
}

}  // namespace

Observable::Observable(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols())
        throw std::invalid_argument("Observable: matrix must be square");
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("Observable: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix_);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("Observable: eigendecomposition failed");
    eigenvalues_ = es.eigenvalues();
    eigenvectors_ = es.eigenvectors();
    const Eigen::MatrixXcd rebuilt =
        eigenvectors_ * eigenvalues_.asDiagonal() * eigenvectors_.adjoint();
    if ((rebuilt - matrix_).cwiseAbs().maxCoeff() > 1e-10)
        throw std::runtime_error("Observable: eigendecomposition reconstruction failed");
}

Eigen::VectorXcd Observable::eigenstate(int k) const {
    if (k < 1 || k > dimension())
        throw std::out_of_range("Observable::eigenstate: index out of range");
    return eigenvectors_.col(k - 1);
}

Eigen::MatrixXcd pointer_momentum_operator(int pointer_sites) {
    if (pointer_sites < 2)
        throw std::invalid_argument("pointer_momentum_operator: need at least 2 sites");
    const Eigen::MatrixXcd f = dft_matrix(pointer_sites);
    Eigen::VectorXd k(pointer_sites);
    for (int i = 0; i < pointer_sites; ++i) k(i) = i;
    return f.adjoint() * k.asDiagonal() * f;
}

std::string scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::VonNeumann: return "vn";
        case Scheme::Kitaev: return "kitaev";
        case Scheme::Kickback: return "kickback";
        case Scheme::Ramsey: return "ramsey";
    }
    return "?";
}

SchemeResult von_neumann_measure(const Observable& a, const Eigen::VectorXcd& system,
                                 int pointer_sites, std::optional<double> time) {
    const int d = a.dimension();
    if (system.size() != d)
        throw std::invalid_argument("von_neumann_measure: system dimension mismatch");
    const double t = time.value_or(2.0 * std::numbers::pi / pointer_sites);

    const Eigen::MatrixXcd p_hat = pointer_momentum_operator(pointer_sites);
    const Eigen::MatrixXcd coupling = kron(a.matrix(), p_hat);

    Eigen::VectorXcd joint = Eigen::VectorXcd::Zero(d * pointer_sites);
    for (int s = 0; s < d; ++s) joint(static_cast<Eigen::Index>(s) * pointer_sites) = system(s);
    joint = dense_expm(coupling, t) * joint;

    // Pointer position is the fast index.
    Eigen::VectorXd dist = Eigen::VectorXd::Zero(pointer_sites);
    for (int s = 0; s < d; ++s)
        for (int x = 0; x < pointer_sites; ++x)
            dist(x) += std::norm(joint(static_cast<Eigen::Index>(s) * pointer_sites + x));
    return SchemeResult{Scheme::VonNeumann, std::move(dist), std::move(joint)};
}

SchemeResult kitaev_circuit(const Observable& a, double t, const Eigen::VectorXcd& system) {
    const int d = a.dimension();
    if (system.size() != d)
        throw std::invalid_argument("kitaev_circuit: system dimension mismatch");

    // Probe is the slow index: joint = (probe bit) * d + system.
    Eigen::VectorXcd joint = Eigen::VectorXcd::Zero(2 * d);
    joint.head(d) = system;

    const Eigen::Matrix2cd& h = hadamard();
    auto probe_hadamard = [&](Eigen::VectorXcd& v) {
        for (int s = 0; s < d; ++s) {
            const Complex x0 = v(s);
            const Complex x1 = v(d + s);
            v(s) = h(0, 0) * x0 + h(0, 1) * x1;
            v(d + s) = h(1, 0) * x0 + h(1, 1) * x1;
        }
    };

    probe_hadamard(joint);
    joint.tail(d) = (dense_expm(a.matrix(), t) * joint.tail(d)).eval();
    probe_hadamard(joint);

    return SchemeResult{Scheme::Kitaev, born_distribution(joint, 2, d, true),
                        std::move(joint)};
}

SchemeResult phase_kickback_circuit(double lambda, double t) {
    const Complex g = std::exp(Complex(0.0, -lambda * t));
    Eigen::VectorXcd probe(2);
    probe(0) = 0.5 * (1.0 + g);
    probe(1) = 0.5 * (1.0 - g);
    Eigen::VectorXd dist(2);
    dist(0) = std::norm(probe(0));
    dist(1) = std::norm(probe(1));
    return SchemeResult{Scheme::Kickback, std::move(dist), std::move(probe)};
}

SchemeResult ramsey_protocol(double lambda, double t, RamseyPulse pulse) {
    Eigen::Matrix2cd r;
    if (pulse == RamseyPulse::Hadamard) {
        r = hadamard();
    } else {
        // exp(-i*pi*sigma_y/4)
        const double c = std::cos(std::numbers::pi / 4.0);
        const double s = std::sin(std::numbers::pi / 4.0);
        r << c, -s, s, c;
    }
    Eigen::Vector2cd v(1.0, 0.0);
    v = r * v;
    v(1) *= std::exp(Complex(0.0, -lambda * t));  // free evolution under diag(0, lambda)
    v = r * v;
    Eigen::VectorXd dist(2);
    dist(0) = std::norm(v(0));
    dist(1) = std::norm(v(1));
    return SchemeResult{Scheme::Ramsey, std::move(dist), std::move(v)};
}

double generator_identity_check(const Observable& a, double t) {
    const int d = a.dimension();
    Eigen::Matrix2cd sigma_x;
    sigma_x << 0.0, 1.0, 1.0, 0.0;
    const Eigen::Matrix2cd p_hat = 0.5 * (Eigen::Matrix2cd::Identity() - sigma_x);
    Eigen::Matrix2cd excited;  // (1 - sigma_z)/2 = |1><1|
    excited << 0.0, 0.0, 0.0, 1.0;

    const Eigen::MatrixXcd lhs = dense_expm(kron(p_hat, a.matrix()), t);
    const Eigen::MatrixXcd h2 = kron(hadamard(), Eigen::MatrixXcd::Identity(d, d));
    const Eigen::MatrixXcd rhs = h2 * dense_expm(kron(excited, a.matrix()), t) * h2;
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

EigenvalueEstimate estimate_eigenvalue(const Observable& a, const Eigen::VectorXcd& state,
                                       const std::vector<double>& times, int shots,
                                       std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("estimate_eigenvalue: shots must be >= 1");
    if (times.empty())
        throw std::invalid_argument("estimate_eigenvalue: degenerate time grid");
    for (double t : times)
        if (!(t > 0.0) || !std::isfinite(t))
            throw std::invalid_argument("estimate_eigenvalue: degenerate time grid");

    double g = times[0];
    for (std::size_t i = 1; i < times.size(); ++i) g = float_gcd(g, times[i]);
    if (!(g > 0.0))
        throw std::invalid_argument("estimate_eigenvalue: degenerate time grid");
    const double window = 2.0 * std::numbers::pi / g;

    // Sampled outcome-0 frequencies at each probe time.
    std::vector<double> freq(times.size());
    for (std::size_t j = 0; j < times.size(); ++j) {
        const double p0 = kitaev_circuit(a, times[j], state).distribution(0);
        auto engine = seeded_engine(seed, "estimate:" + std::to_string(j));
        int hits = 0;
        for (int s = 0; s < shots; ++s)
            if (next_uniform(engine) < p0) ++hits;
        freq[j] = static_cast<double>(hits) / shots;
    }

    auto sse = [&](double lam) {
        double acc = 0.0;
        for (std::size_t j = 0; j < times.size(); ++j) {
            const double model = 0.5 * (1.0 + std::cos(lam * times[j]));
            acc += (freq[j] - model) * (freq[j] - model);
        }
        return acc;
    };

    // Cosine data cannot distinguish ±lambda, so scan the canonical half
    // window, densely enough to resolve the fastest oscillation, then refine.
    const double half = 0.5 * window;
    const double t_max = *std::max_element(times.begin(), times.end());
    const double coarse = std::min(half, std::numbers::pi / (8.0 * t_max));
    const int npts = std::max(2, static_cast<int>(std::ceil(half / coarse)) + 1);
    double best_lam = 0.0;
    double best = sse(0.0);
    for (int i = 1; i < npts; ++i) {
        const double lam = half * i / (npts - 1);
        const double val = sse(lam);
        if (val < best) {
            best = val;
            best_lam = lam;
        }
    }

    double lo = std::max(0.0, best_lam - half / (npts - 1));
    double hi = std::min(half, best_lam + half / (npts - 1));
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 80; ++it) {
        const double x1 = hi - phi * (hi - lo);
        const double x2 = lo + phi * (hi - lo);
        if (sse(x1) < sse(x2)) hi = x2;
        else lo = x1;
    }
    return EigenvalueEstimate{0.5 * (lo + hi), window};
}

}  // namespace fockforge
