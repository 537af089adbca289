#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fockforge/firstq.hpp"
#include "fockforge/oracle.hpp"

using namespace fockforge;

namespace {

Eigen::VectorXcd random_vector(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> dist;
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(dist(eng), dist(eng));
    return v;
}

struct RingSystem {
    LatticeSpec spec;
    KineticMatrix kinetic;
    PotentialField potential;
    PairInteraction interaction;
    MomentumTransform transform;
};

RingSystem make_ring(int m, double hopping, double strength,
                     const std::vector<double>& v_values) {
    LatticeSpec spec(m, Geometry::Ring, 1.0);
    KineticMatrix t = build_ring_kinetic(spec, hopping);
    PotentialField v(m);
    for (int i = 0; i < m; ++i) v(i) = v_values.empty() ? 0.0 : v_values[i];
    PairInteraction w = coulomb_interaction(spec, strength);
    MomentumTransform mt = momentum_transform(t);
    return RingSystem{spec, std::move(t), std::move(v), std::move(w), std::move(mt)};
}

double state_distance(const FirstQuantState& a, const FirstQuantState& b) {
    return (a.amplitudes - b.amplitudes).norm();
}

}  // namespace

TEST_CASE("tuple indexing: row-major, particle 1 slowest") {
    CHECK(tuple_to_index(4, 2, {1, 1}) == 0);
    CHECK(tuple_to_index(4, 2, {1, 2}) == 1);
    CHECK(tuple_to_index(4, 2, {2, 1}) == 4);
    CHECK(index_to_tuple(4, 2, 7) == std::vector<int>{2, 4});
    CHECK_THROWS_AS(tuple_to_index(4, 2, {0, 1}), std::out_of_range);
}

TEST_CASE("slater_state: identity orbitals, M=N=2") {
    const FirstQuantState psi =
        slater_state(Eigen::MatrixXcd::Identity(2, 2), {1, 2}, 2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(psi.amplitudes(tuple_to_index(2, 2, {1, 2})) - Complex(s, 0)) < 1e-15);
    CHECK(std::abs(psi.amplitudes(tuple_to_index(2, 2, {2, 1})) - Complex(-s, 0)) < 1e-15);
    CHECK(std::abs(psi.amplitudes(tuple_to_index(2, 2, {1, 1}))) == 0.0);
    CHECK(std::abs(psi.amplitudes(tuple_to_index(2, 2, {2, 2}))) == 0.0);
    CHECK(psi.antisymmetric);
}

TEST_CASE("slater_state: N=1 is a single orbital row") {
    const RingSystem sys = make_ring(5, 1.0, 0.0, {});
    const Eigen::MatrixXcd orbitals = sys.transform.matrix.transpose();
    const FirstQuantState psi = slater_state(orbitals, {3}, 5, 1);
    for (int b = 1; b <= 5; ++b)
        CHECK(std::abs(psi.amplitudes(b - 1) - orbitals(2, b - 1)) < 1e-15);
}

TEST_CASE("slater_state: DFT orbitals match the permutation-sum oracle") {
    const Eigen::MatrixXcd c = dft_matrix(4);
    const FirstQuantState psi = slater_state(c, {1, 2}, 4, 2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int b1 = 1; b1 <= 4; ++b1)
        for (int b2 = 1; b2 <= 4; ++b2) {
            const Complex expect =
                brute_force_antisym_overlap(c, {1, 2}, {b1, b2}) * inv_sqrt2;
            CHECK(std::abs(psi.amplitudes(tuple_to_index(4, 2, {b1, b2})) - expect) < 1e-12);
        }
}

TEST_CASE("slater_state: input validation") {
    const Eigen::MatrixXcd c = Eigen::MatrixXcd::Identity(4, 4);
    CHECK_THROWS_AS(slater_state(c, {2, 1}, 4, 2), std::invalid_argument);
    CHECK_THROWS_AS(slater_state(c, {1, 1}, 4, 2), std::invalid_argument);
    CHECK_THROWS_AS(slater_state(c, {0, 2}, 4, 2), std::out_of_range);
    CHECK_THROWS_AS(slater_state(c, {1, 5}, 4, 2), std::out_of_range);
}

TEST_CASE("antisymmetrize: unit tuple (1,2) on two sites") {
    Eigen::VectorXcd raw = Eigen::VectorXcd::Zero(4);
    raw(tuple_to_index(2, 2, {1, 2})) = 1.0;
    const FirstQuantState psi = antisymmetrize(raw, 2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(psi.amplitudes(tuple_to_index(2, 2, {1, 2})) - Complex(s, 0)) < 1e-15);
    CHECK(std::abs(psi.amplitudes(tuple_to_index(2, 2, {2, 1})) - Complex(-s, 0)) < 1e-15);
}

TEST_CASE("antisymmetrize: doubly occupied tuple has zero projection") {
    Eigen::VectorXcd raw = Eigen::VectorXcd::Zero(4);
    raw(tuple_to_index(2, 2, {1, 1})) = 1.0;
    CHECK_THROWS_AS(antisymmetrize(raw, 2, 2), std::domain_error);
}

TEST_CASE("antisymmetrize: output is antisymmetric and idempotent") {
    const Eigen::VectorXcd raw = random_vector(64, 21);
    const FirstQuantState once = antisymmetrize(raw, 3, 4);
    CHECK(antisymmetry_defect(once) < 1e-12);
    const FirstQuantState twice = antisymmetrize(once.amplitudes, 3, 4);
    CHECK(state_distance(once, twice) < 1e-12);
    CHECK(std::abs(once.norm() - 1.0) < 1e-12);
}

TEST_CASE("apply_diagonal_phase: paper pair picture e^{-i xi / 3}") {
    const RingSystem sys = make_ring(8, 0.0, 1.0, {});
    const double xi = 0.75;
    FirstQuantState psi{2, 8, Eigen::VectorXcd::Zero(64), false};
    psi.amplitudes(tuple_to_index(8, 2, {3, 6})) = 1.0;
    apply_diagonal_phase(psi, sys.potential, sys.interaction, xi);
    const Complex expect = std::exp(Complex(0.0, -xi / 3.0));
    CHECK(std::abs(psi.amplitudes(tuple_to_index(8, 2, {3, 6})) - expect) < 1e-15);
}

TEST_CASE("apply_diagonal_phase: V = W = 0 leaves the state unchanged") {
    const RingSystem sys = make_ring(4, 1.0, 0.0, {});
    FirstQuantState psi{2, 4, random_vector(16, 3).normalized(), false};
    const FirstQuantState before = psi;
    apply_diagonal_phase(psi, PotentialField::Zero(4), sys.interaction, 0.7);
    CHECK(state_distance(psi, before) == 0.0);
}

TEST_CASE("apply_diagonal_phase: N=1 equals the dense diagonal exponential") {
    const RingSystem sys = make_ring(6, 0.0, 0.0, {0.4, -0.3, 0.1, 0.9, -0.6, 0.2});
    FirstQuantState psi{1, 6, random_vector(6, 8).normalized(), false};
    const Eigen::MatrixXcd u =
        dense_expm(Eigen::MatrixXcd(sys.potential.cast<Complex>().asDiagonal()), 1.3);
    const Eigen::VectorXcd expect = u * psi.amplitudes;
    apply_diagonal_phase(psi, sys.potential, sys.interaction, 1.3);
    CHECK((psi.amplitudes - expect).norm() < 1e-12);
}

TEST_CASE("apply_diagonal_phase: quantized path tracks the exact phases") {
    const RingSystem sys = make_ring(8, 0.0, 1.0, {});
    const double dt = 0.3;
    for (int b : {4, 8, 12, 16}) {
        FirstQuantState exact{2, 8, random_vector(64, 40 + b).normalized(), false};
        FirstQuantState quant = exact;
        apply_diagonal_phase(exact, sys.potential, sys.interaction, dt);
        apply_diagonal_phase(quant, sys.potential, sys.interaction, dt, b);
        const double err = state_distance(exact, quant);
        CHECK(err <= dt * 1.0 * 1.0 * std::ldexp(1.0, -b + 1));
    }
}

TEST_CASE("apply_kinetic_step: dt = 0 is the identity") {
    const RingSystem sys = make_ring(4, 1.0, 0.0, {});
    FirstQuantState psi{2, 4, random_vector(16, 5).normalized(), false};
    const FirstQuantState before = psi;
    apply_kinetic_step(psi, sys.transform, 0.0);
    CHECK(state_distance(psi, before) == 0.0);
}

TEST_CASE("apply_kinetic_step: N=1 matches dense_expm(T, t)") {
    const RingSystem sys = make_ring(5, 1.2, 0.0, {});
    FirstQuantState psi{1, 5, random_vector(5, 6).normalized(), false};
    const Eigen::VectorXcd expect = dense_expm(sys.kinetic.entries, 0.9) * psi.amplitudes;
    apply_kinetic_step(psi, sys.transform, 0.9);
    CHECK((psi.amplitudes - expect).norm() < 1e-10);
}

TEST_CASE("apply_kinetic_step: N=2 matches dense_expm(T x I + I x T, t)") {
    const RingSystem sys = make_ring(4, 0.8, 0.0, {});
    FirstQuantState psi{2, 4, random_vector(16, 7).normalized(), false};
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(4, 4);
    const Eigen::MatrixXcd h2 =
        kron(sys.kinetic.entries, id) + kron(id, sys.kinetic.entries);
    const Eigen::VectorXcd expect = dense_expm(h2, 1.1) * psi.amplitudes;
    apply_kinetic_step(psi, sys.transform, 1.1);
    CHECK((psi.amplitudes - expect).norm() < 1e-10);
}

TEST_CASE("evolve_a1: dt = 0 is the identity for both splittings") {
    const RingSystem sys = make_ring(4, 1.0, 0.5, {0.1, 0.2, 0.3, 0.4});
    const FirstQuantState psi0 = slater_state(sys.transform.matrix.transpose(), {1, 2}, 4, 2);
    for (Splitting s : {Splitting::LieTrotter1, Splitting::Strang2}) {
        const FirstQuantState out =
            evolve_a1(psi0, A1Plan(0.0, 1, s), sys.potential, sys.interaction, sys.transform);
        CHECK(state_distance(out, psi0) == 0.0);
    }
}

TEST_CASE("evolve_a1: pure kinetic case is exact at any dt") {
    const RingSystem sys = make_ring(4, 1.0, 0.0, {});
    const FirstQuantState psi0 = slater_state(sys.transform.matrix.transpose(), {1, 3}, 4, 2);
    const double t = 1.7;
    const FirstQuantState out = evolve_a1(psi0, A1Plan(t, 1, Splitting::LieTrotter1),
                                          sys.potential, sys.interaction, sys.transform);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(4, 4);
    const Eigen::MatrixXcd h2 =
        kron(sys.kinetic.entries, id) + kron(id, sys.kinetic.entries);
    const Eigen::VectorXcd expect = dense_expm(h2, t) * psi0.amplitudes;
    CHECK((out.amplitudes - expect).norm() < 1e-10);
}

TEST_CASE("evolve_a1: norm and antisymmetry are preserved") {
    const RingSystem sys = make_ring(4, 1.0, 0.6, {0.3, -0.2, 0.5, 0.1});
    const FirstQuantState psi0 = slater_state(sys.transform.matrix.transpose(), {1, 2}, 4, 2);
    const FirstQuantState out =
        evolve_a1(psi0, A1Plan(0.05, 40, Splitting::Strang2), sys.potential,
                  sys.interaction, sys.transform);
    CHECK(std::abs(out.norm() - 1.0) < 1e-12);
    CHECK(antisymmetry_defect(out) < 1e-10);
}

TEST_CASE("evolve_a1: Trotter error scales at the splitting order") {
    const RingSystem sys = make_ring(4, 1.0, 0.6, {0.3, -0.2, 0.5, 0.1});
    const FirstQuantState psi0 = slater_state(sys.transform.matrix.transpose(), {1, 2}, 4, 2);
    const double t = 1.0;
    const Eigen::MatrixXcd h1 = first_quant_hamiltonian_dense(
        4, 2, sys.kinetic, sys.potential, sys.interaction);
    const Eigen::VectorXcd exact = dense_expm(h1, t) * psi0.amplitudes;

    for (Splitting splitting : {Splitting::LieTrotter1, Splitting::Strang2}) {
        std::vector<double> log_dt, log_err;
        for (int steps : {8, 16, 32, 64, 128}) {
            const FirstQuantState out =
                evolve_a1(psi0, A1Plan(t / steps, steps, splitting), sys.potential,
                          sys.interaction, sys.transform);
            log_dt.push_back(std::log(t / steps));
            log_err.push_back(std::log((out.amplitudes - exact).norm()));
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n = static_cast<int>(log_dt.size());
        for (int i = 0; i < n; ++i) {
            sx += log_dt[i];
            sy += log_err[i];
            sxx += log_dt[i] * log_dt[i];
            sxy += log_dt[i] * log_err[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double expected = (splitting == Splitting::LieTrotter1) ? 1.0 : 2.0;
        CHECK(std::abs(slope - expected) <= 0.15);
    }
}

TEST_CASE("qubit_cost_a1: storage claims") {
    CHECK(qubit_cost_a1(8, 2) == 6);
    CHECK(qubit_cost_a1(2, 1) == 1);
    CHECK(qubit_cost_a1(6, 3) == 9);
    CHECK(qubit_cost_a1(9, 2) == 8);
}
