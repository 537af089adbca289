#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fockforge/oracle.hpp"

using namespace fockforge;

namespace {

Eigen::MatrixXcd pauli_x() {
    Eigen::MatrixXcd m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Eigen::MatrixXcd pauli_z() {
    Eigen::MatrixXcd m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Eigen::MatrixXcd random_hermitian(int n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> dist;
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = Complex(dist(eng), dist(eng));
    return 0.5 * (g + Eigen::MatrixXcd(g.adjoint()));
}

Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(random_hermitian(n, seed));
    return es.eigenvectors();
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("dense_expm: zero Hamiltonian is the identity") {
    const Eigen::MatrixXcd u = dense_expm(Eigen::MatrixXcd::Zero(5, 5), 2.7);
    CHECK(max_abs(u - Eigen::MatrixXcd::Identity(5, 5)) < 1e-14);
}

TEST_CASE("dense_expm: sigma_z at t = pi/2") {
    const Eigen::MatrixXcd u = dense_expm(pauli_z(), std::numbers::pi / 2.0);
    CHECK(std::abs(u(0, 0) - std::exp(Complex(0.0, -std::numbers::pi / 2.0))) < 1e-14);
    CHECK(std::abs(u(1, 1) - std::exp(Complex(0.0, std::numbers::pi / 2.0))) < 1e-14);
    CHECK(std::abs(u(0, 1)) < 1e-14);
}

TEST_CASE("dense_expm: sigma_x closed form cos(t) I - i sin(t) sigma_x") {
    for (double t : {0.3, 1.0, 2.5}) {
        const Eigen::MatrixXcd u = dense_expm(pauli_x(), t);
        const Eigen::MatrixXcd ref =
            std::cos(t) * Eigen::MatrixXcd::Identity(2, 2) -
            Complex(0.0, std::sin(t)) * pauli_x();
        CHECK(max_abs(u - ref) < 1e-13);
    }
}

TEST_CASE("dense_expm: unitarity and group law") {
    const Eigen::MatrixXcd h = random_hermitian(6, 99);
    const Eigen::MatrixXcd a = dense_expm(h, 0.8);
    CHECK(max_abs(a * a.adjoint() - Eigen::MatrixXcd::Identity(6, 6)) < 1e-11);
    CHECK(max_abs(dense_expm(h, 0.8) * dense_expm(h, -0.8) -
                  Eigen::MatrixXcd::Identity(6, 6)) < 1e-11);
    CHECK(max_abs(dense_expm(h, 1.3) - dense_expm(h, 0.8) * dense_expm(h, 0.5)) < 1e-10);
}

TEST_CASE("dense_expm: rejects non-Hermitian input") {
    Eigen::MatrixXcd bad(2, 2);
    bad << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(dense_expm(bad, 1.0), std::invalid_argument);
}

TEST_CASE("exact_spectrum: worked values and ordering") {
    const Eigen::VectorXd sx = exact_spectrum(pauli_x());
    CHECK(sx(0) == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(sx(1) == doctest::Approx(1.0).epsilon(1e-13));
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    const Eigen::VectorXd sd = exact_spectrum(d);
    CHECK(sd(0) == doctest::Approx(1.0));
    CHECK(sd(1) == doctest::Approx(2.0));
    CHECK(sd(2) == doctest::Approx(3.0));
}

TEST_CASE("exact_spectrum: invariant under unitary similarity") {
    const Eigen::MatrixXcd h = random_hermitian(7, 5);
    const Eigen::MatrixXcd u = random_unitary(7, 6);
    const Eigen::VectorXd s1 = exact_spectrum(h);
    const Eigen::VectorXd s2 = exact_spectrum(u.adjoint() * h * u);
    CHECK((s1 - s2).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("brute_force_antisym_overlap: N=1 and N=2 closed forms") {
    const Eigen::MatrixXcd c = random_hermitian(4, 11);
    CHECK(brute_force_antisym_overlap(c, {2}, {3}) == c(1, 2));
    const Complex two = brute_force_antisym_overlap(c, {1, 3}, {2, 4});
    CHECK(std::abs(two - (c(0, 1) * c(2, 3) - c(0, 3) * c(2, 1))) < 1e-15);
}

TEST_CASE("brute_force_antisym_overlap: guards") {
    const Eigen::MatrixXcd c = Eigen::MatrixXcd::Identity(8, 8);
    CHECK_THROWS_AS(brute_force_antisym_overlap(c, {1, 2, 3, 4, 5, 6, 7}, {1, 2, 3, 4, 5, 6, 7}),
                    std::invalid_argument);
    CHECK_THROWS_AS(brute_force_antisym_overlap(c, {0}, {1}), std::out_of_range);
    CHECK_THROWS_AS(brute_force_antisym_overlap(c, {1}, {9}), std::out_of_range);
}

TEST_CASE("first_quant_hamiltonian_dense: N=1 equals T + diag(V)") {
    const LatticeSpec spec(5, Geometry::Ring, 1.0);
    const KineticMatrix t = build_ring_kinetic(spec, 0.9);
    PotentialField v(5);
    v << 0.1, -0.4, 0.2, 0.0, 0.7;
    const PairInteraction w = coulomb_interaction(spec, 0.3);
    const Eigen::MatrixXcd h = first_quant_hamiltonian_dense(5, 1, t, v, w);
    const Eigen::MatrixXcd ref =
        t.entries + Eigen::MatrixXcd(v.cast<Complex>().asDiagonal());
    CHECK(max_abs(h - ref) == 0.0);
}

TEST_CASE("first_quant_hamiltonian_dense: T=0, V=0 is the diagonal of pair sums") {
    const LatticeSpec spec(4, Geometry::Ring, 1.0);
    const KineticMatrix t = build_ring_kinetic(spec, 0.0);
    const PotentialField v = PotentialField::Zero(4);
    const PairInteraction w = coulomb_interaction(spec, 1.0);
    const Eigen::MatrixXcd h = first_quant_hamiltonian_dense(4, 2, t, v, w);
    for (int x1 = 1; x1 <= 4; ++x1)
        for (int x2 = 1; x2 <= 4; ++x2) {
            const std::size_t idx = static_cast<std::size_t>((x1 - 1) * 4 + (x2 - 1));
            const double expect = (x1 == x2) ? 0.0 : 1.0 / distance(spec, x1, x2);
            CHECK(std::abs(h(idx, idx) - expect) < 1e-15);
        }
    CHECK(max_abs(h - Eigen::MatrixXcd(h.diagonal().asDiagonal())) == 0.0);
}

TEST_CASE("first_quant_hamiltonian_dense: commutes with particle swap") {
    const LatticeSpec spec(3, Geometry::Ring, 1.0);
    const KineticMatrix t = build_ring_kinetic(spec, 1.1);
    PotentialField v(3);
    v << 0.2, -0.1, 0.4;
    const PairInteraction w = coulomb_interaction(spec, 0.8);
    const Eigen::MatrixXcd h = first_quant_hamiltonian_dense(3, 2, t, v, w);
    Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(9, 9);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) swap(a * 3 + b, b * 3 + a) = 1.0;
    CHECK(max_abs(h * swap - swap * h) < 1e-12);
    CHECK(max_abs(h - h.adjoint()) < 1e-12);
}

TEST_CASE("first_quant_hamiltonian_dense: size guard fails loudly") {
    const LatticeSpec spec(16, Geometry::Ring, 1.0);
    const KineticMatrix t = build_ring_kinetic(spec, 1.0);
    const PotentialField v = PotentialField::Zero(16);
    const PairInteraction w = coulomb_interaction(spec, 1.0);
    CHECK_THROWS_AS(first_quant_hamiltonian_dense(16, 6, t, v, w), SizeGuardError);
}

TEST_CASE("kron: dimensions and a known product") {
    const Eigen::MatrixXcd k = kron(pauli_x(), pauli_z());
    CHECK(k.rows() == 4);
    CHECK(k(0, 2) == Complex(1.0, 0.0));
    CHECK(k(1, 3) == Complex(-1.0, 0.0));
    CHECK(k(0, 0) == Complex(0.0, 0.0));
}
