#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fockforge/bridge.hpp"
#include "fockforge/oracle.hpp"

using namespace fockforge;

namespace {

Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> dist;
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = Complex(dist(eng), dist(eng));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (g + Eigen::MatrixXcd(g.adjoint())));
    return es.eigenvectors();
}

Eigen::VectorXcd random_vector(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> dist;
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(dist(eng), dist(eng));
    return v.normalized();
}

}  // namespace

TEST_CASE("plucker_overlap: 1x1 and identity sign conventions") {
    const Eigen::MatrixXcd c = random_unitary(4, 1);
    CHECK(plucker_overlap(c, {2}, {3}) == c(1, 2));
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(3, 3);
    CHECK(plucker_overlap(id, {1, 2}, {1, 2}) == Complex(1.0, 0.0));
    CHECK(plucker_overlap(id, {1, 2}, {2, 1}) == Complex(-1.0, 0.0));
}

TEST_CASE("plucker_overlap: N=3 random unitary matches the permutation sum") {
    const Eigen::MatrixXcd c = random_unitary(6, 2);
    const std::vector<std::vector<int>> js = {{1, 2, 3}, {1, 3, 5}, {2, 4, 6}};
    const std::vector<std::vector<int>> bs = {{1, 2, 3}, {5, 2, 6}, {4, 1, 3}};
    for (const auto& j : js)
        for (const auto& b : bs)
            CHECK(std::abs(plucker_overlap(c, j, b) -
                           brute_force_antisym_overlap(c, j, b)) < 1e-12);
}

TEST_CASE("plucker_overlap: N=4 falls back to LU and still matches") {
    const Eigen::MatrixXcd c = random_unitary(6, 3);
    const std::vector<int> j = {1, 2, 4, 6};
    const std::vector<int> b = {3, 1, 5, 2};
    CHECK(std::abs(plucker_overlap(c, j, b) - brute_force_antisym_overlap(c, j, b)) < 1e-12);
}

TEST_CASE("plucker_overlap: exact row multilinearity for N <= 3") {
    Eigen::MatrixXcd c = random_unitary(5, 4);
    const std::vector<int> j = {1, 3, 4};
    const std::vector<int> b = {2, 5, 1};
    const Complex base = plucker_overlap(c, j, b);
    Eigen::MatrixXcd scaled = c;
    scaled.row(0) *= 2.0;  // row j1 = 1
    CHECK(plucker_overlap(scaled, j, b) == 2.0 * base);
}

TEST_CASE("plucker_overlap: validation") {
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(4, 4);
    CHECK_THROWS_AS(plucker_overlap(id, {2, 1}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(plucker_overlap(id, {1, 5}, {1, 2}), std::out_of_range);
    CHECK_THROWS_AS(plucker_overlap(id, {1, 2}, {0, 2}), std::out_of_range);
}

TEST_CASE("first_to_fock: two-site singlet lands on bitstring 11") {
    FirstQuantState psi{2, 2, Eigen::VectorXcd::Zero(4), true};
    const double s = 1.0 / std::sqrt(2.0);
    psi.amplitudes(tuple_to_index(2, 2, {1, 2})) = s;
    psi.amplitudes(tuple_to_index(2, 2, {2, 1})) = -s;
    const FockState fock = first_to_fock(psi);
    CHECK(std::abs(fock.amplitudes(3) - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("first_to_fock: identity Slater state maps to the orbital bitstring") {
    const FirstQuantState psi =
        slater_state(Eigen::MatrixXcd::Identity(4, 4), {2, 4}, 4, 2);
    const FockState fock = first_to_fock(psi);
    const std::uint32_t expect = (1u << 1) | (1u << 3);
    CHECK(std::abs(std::abs(fock.amplitudes(expect)) - 1.0) < 1e-12);
}

TEST_CASE("first_to_fock: isometry on random antisymmetric states") {
    const Eigen::VectorXcd raw1 = random_vector(16, 7);
    const Eigen::VectorXcd raw2 = random_vector(16, 8);
    const FirstQuantState a = antisymmetrize(raw1, 2, 4);
    const FirstQuantState b = antisymmetrize(raw2, 2, 4);
    const FockState fa = first_to_fock(a);
    const FockState fb = first_to_fock(b);
    CHECK(std::abs(fa.norm() - 1.0) < 1e-10);
    const Complex inner_first = a.amplitudes.dot(b.amplitudes);
    const Complex inner_fock = fa.amplitudes.dot(fb.amplitudes);
    CHECK(std::abs(inner_first - inner_fock) < 1e-10);
}

TEST_CASE("first_to_fock: rejects non-antisymmetric input") {
    FirstQuantState psi{2, 3, Eigen::VectorXcd::Zero(9), false};
    psi.amplitudes(tuple_to_index(3, 2, {1, 2})) = 1.0;  // no mirrored -1 entry
    CHECK_THROWS_AS(first_to_fock(psi), std::invalid_argument);
}

TEST_CASE("fock_to_first: unit bitstring gives the antisymmetric pair tensor") {
    const FockState fock = fock_basis_state(4, 0b0011);
    const FirstQuantState psi = fock_to_first(fock);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(psi.amplitudes(tuple_to_index(4, 2, {1, 2})) - Complex(s, 0)) < 1e-12);
    CHECK(std::abs(psi.amplitudes(tuple_to_index(4, 2, {2, 1})) - Complex(-s, 0)) < 1e-12);
    CHECK(antisymmetry_defect(psi) < 1e-12);
}

TEST_CASE("fock_to_first: round trip is the identity") {
    const SectorBasis sector = build_sector(4, 2);
    Eigen::VectorXcd coeff = random_vector(6, 9);
    FockState fock{4, Eigen::VectorXcd::Zero(16)};
    for (int i = 0; i < 6; ++i) fock.amplitudes(sector.bitstrings[i]) = coeff(i);
    const FockState round = first_to_fock(fock_to_first(fock));
    CHECK((round.amplitudes - fock.amplitudes).norm() < 1e-12);
    const FirstQuantState psi = fock_to_first(fock);
    CHECK(antisymmetry_defect(psi) < 1e-12);
}

TEST_CASE("fock_to_first: rejects cross-sector support") {
    FockState fock{3, Eigen::VectorXcd::Zero(8)};
    fock.amplitudes(0b001) = 1.0;
    fock.amplitudes(0b011) = 0.5;
    CHECK_THROWS_AS(fock_to_first(fock), std::invalid_argument);
}

TEST_CASE("bridge: antisymmetric-subspace spectrum equals the sector spectrum") {
    struct Case { int m; int n; };
    for (const Case c : {Case{3, 2}, Case{4, 2}, Case{4, 3}}) {
        const LatticeSpec spec(c.m, Geometry::Ring, 1.0);
        const KineticMatrix t = build_ring_kinetic(spec, 1.0);
        PotentialField v(c.m);
        for (int i = 0; i < c.m; ++i) v(i) = 0.1 * (i + 1) * ((i % 2) ? -1 : 1);
        const PairInteraction w = coulomb_interaction(spec, 0.7);

        const Eigen::MatrixXcd h1 = first_quant_hamiltonian_dense(c.m, c.n, t, v, w);
        const SectorBasis sector = build_sector(c.m, c.n);
        Eigen::MatrixXcd basis(h1.rows(), sector.bitstrings.size());
        for (std::size_t i = 0; i < sector.bitstrings.size(); ++i) {
            const FirstQuantState e = fock_to_first(fock_basis_state(c.m, sector.bitstrings[i]));
            basis.col(i) = e.amplitudes;
        }
        const Eigen::VectorXd anti = exact_spectrum(basis.adjoint() * h1 * basis);

        const SecondQuantHamiltonian h2(
            t.entries + Eigen::MatrixXcd(v.cast<Complex>().asDiagonal()), w);
        const Eigen::VectorXd sect = exact_spectrum(build_hamiltonian_matrix(h2, &sector));
        REQUIRE(anti.size() == sect.size());
        CHECK((anti - sect).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("compare_evolutions: t = 0 has unit fidelity") {
    const LatticeSpec spec(4, Geometry::Ring, 1.0);
    const KineticMatrix t = build_ring_kinetic(spec, 1.0);
    const PairInteraction w = coulomb_interaction(spec, 0.5);
    const FidelityReport report =
        compare_evolutions(spec, t, PotentialField::Zero(4), w, {1, 2}, 0.0, 1);
    CHECK(report.oracle_fidelity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.trotter_fidelity == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("compare_evolutions: (4,2) ring Coulomb at t = 1") {
    const LatticeSpec spec(4, Geometry::Ring, 1.0);
    const KineticMatrix t = build_ring_kinetic(spec, 1.0);
    PotentialField v(4);
    v << 0.3, -0.2, 0.5, 0.1;
    const PairInteraction w = coulomb_interaction(spec, 1.0);
    const FidelityReport report = compare_evolutions(spec, t, v, w, {1, 2}, 1.0, 64);
    CHECK(report.oracle_fidelity >= 1.0 - 1e-9);
    CHECK(report.trotter_fidelity >= 0.99);
}

TEST_CASE("compare_evolutions: N=1 equals the direct single-particle overlap") {
    const LatticeSpec spec(5, Geometry::Ring, 1.0);
    const KineticMatrix t = build_ring_kinetic(spec, 1.3);
    PotentialField v(5);
    v << 0.2, 0.0, -0.4, 0.1, 0.3;
    const PairInteraction w = coulomb_interaction(spec, 0.9);
    const double time = 0.8;
    const int steps = 16;
    const FidelityReport report = compare_evolutions(spec, t, v, w, {2}, time, steps);

    // Single particle: both representations evolve the same M-vector.
    const MomentumTransform mt = momentum_transform(t);
    const Eigen::VectorXcd orb = mt.matrix.col(1);
    const Eigen::MatrixXcd h =
        t.entries + Eigen::MatrixXcd(v.cast<Complex>().asDiagonal());
    const Eigen::VectorXcd evolved = dense_expm(h, time) * orb;
    CHECK(report.oracle_fidelity == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(evolved.norm() - 1.0) < 1e-12);
}
