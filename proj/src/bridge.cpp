#include "fockforge/bridge.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fockforge/oracle.hpp"

namespace fockforge {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Ascending 1-based tuple <-> occupation bitstring.
std::uint32_t tuple_bits(const std::vector<int>& tuple) {
    std::uint32_t s = 0;
    for (int k : tuple) s |= std::uint32_t{1} << (k - 1);
    return s;
}

std::vector<int> bits_tuple(std::uint32_t s) {
    std::vector<int> tuple;
    while (s) {
        tuple.push_back(std::countr_zero(s) + 1);
        s &= s - 1;
    }
    return tuple;
}

}  // namespace

Complex plucker_overlap(const Eigen::MatrixXcd& c, const std::vector<int>& rows_j,
                        const std::vector<int>& cols_b) {
    const int n = static_cast<int>(rows_j.size());
    if (static_cast<int>(cols_b.size()) != n)
        throw std::invalid_argument("plucker_overlap: tuple sizes differ");
    for (int i = 0; i < n; ++i) {
        if (rows_j[i] < 1 || rows_j[i] > c.rows())
            throw std::out_of_range("plucker_overlap: row index out of range");
        if (cols_b[i] < 1 || cols_b[i] > c.cols())
            throw std::out_of_range("plucker_overlap: column index out of range");
        if (i > 0 && rows_j[i] <= rows_j[i - 1])
            throw std::invalid_argument("plucker_overlap: J must be strictly ascending");
    }
    if (n == 0) return 1.0;

    auto at = [&](int r, int col) { return c(rows_j[r] - 1, cols_b[col] - 1); };
    switch (n) {
        case 1:
            return at(0, 0);
        case 2:
            return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
        case 3:
            return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
                   at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
                   at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
        default: {
            Eigen::MatrixXcd sub(n, n);
            for (int r = 0; r < n; ++r)
                for (int col = 0; col < n; ++col) sub(r, col) = at(r, col);
            return sub.determinant();
        }
    }
}

FockState first_to_fock(const FirstQuantState& state) {
    const int m = state.sites;
    const int n = state.particles;
    if (m > kMaxFockModes)
        throw SizeGuardError("first_to_fock: 2^M guard exceeded (M <= 14)");
    if (antisymmetry_defect(state) > 1e-8)
        throw std::invalid_argument("first_to_fock: input is not antisymmetric");

    FockState fock{m, Eigen::VectorXcd::Zero(std::size_t{1} << m)};
    const double sqrt_nfact = std::sqrt(factorial(n));

    std::vector<int> comb(n);
    std::iota(comb.begin(), comb.end(), 1);
    if (n == 0) {
        fock.amplitudes(0) = state.amplitudes(0);
    } else {
        while (true) {
            fock.amplitudes(tuple_bits(comb)) =
                sqrt_nfact * state.amplitudes(tuple_to_index(m, n, comb));
            int i = n - 1;
            while (i >= 0 && comb[i] == m - (n - 1 - i)) --i;
            if (i < 0) break;
            ++comb[i];
            for (int k = i + 1; k < n; ++k) comb[k] = comb[k - 1] + 1;
        }
    }

    const double nrm = fock.norm();
    if (nrm == 0.0) throw std::invalid_argument("first_to_fock: zero state");
    fock.amplitudes /= nrm;
    return fock;
}

FirstQuantState fock_to_first(const FockState& state) {
    const int m = state.modes;
    const double nrm = state.norm();
    if (nrm == 0.0) throw std::invalid_argument("fock_to_first: zero state");

    // The support must live in one particle-number sector.
    int n = -1;
    const double tol = 1e-12 * nrm;
    for (std::uint32_t s = 0; s < state.amplitudes.size(); ++s) {
        if (std::abs(state.amplitudes(s)) <= tol) continue;
        const int pc = std::popcount(s);
        if (n < 0) n = pc;
        else if (pc != n)
            throw std::invalid_argument("fock_to_first: support crosses sectors");
    }
    if (n < 0) throw std::invalid_argument("fock_to_first: zero state");

    FirstQuantState out{n, m, Eigen::VectorXcd::Zero(first_quant_dim(m, n)), true};
    const double inv_sqrt_nfact = 1.0 / std::sqrt(factorial(n));

    if (n == 0) {
        out.amplitudes(0) = state.amplitudes(0);
    } else {
        std::vector<int> perm(n), permuted(n);
        for (std::uint32_t s = 0; s < state.amplitudes.size(); ++s) {
            const Complex d = state.amplitudes(s);
            if (d == Complex(0.0, 0.0) || std::popcount(s) != n) continue;
            const std::vector<int> tuple = bits_tuple(s);
            std::iota(perm.begin(), perm.end(), 0);
            do {
                int inversions = 0;
                for (int a = 0; a < n; ++a)
                    for (int b = a + 1; b < n; ++b)
                        if (perm[a] > perm[b]) ++inversions;
                const double sign = (inversions % 2 == 0) ? 1.0 : -1.0;
                for (int i = 0; i < n; ++i) permuted[i] = tuple[perm[i]];
                out.amplitudes(tuple_to_index(m, n, permuted)) = sign * d * inv_sqrt_nfact;
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }

    out.amplitudes /= out.norm();
    return out;
}

FidelityReport compare_evolutions(const LatticeSpec& spec, const KineticMatrix& t,
                                  const PotentialField& v, const PairInteraction& w,
                                  const std::vector<int>& orbitals, double time,
                                  int steps, Splitting splitting) {
    const int m = spec.sites;
    const int n = static_cast<int>(orbitals.size());
    const MomentumTransform transform = momentum_transform(t);

    // Rows of the slater_state matrix are orbital wavefunctions, so pass the
    // transpose: occupied orbitals are eigenvectors (columns) of T.
    const FirstQuantState psi0 = slater_state(transform.matrix.transpose(), orbitals, m, n);
    const FockState fock0 = first_to_fock(psi0);

    const SecondQuantHamiltonian h2(
        t.entries + Eigen::MatrixXcd(v.cast<Complex>().asDiagonal()), w);

    // Dense-oracle route.
    const Eigen::MatrixXcd h1 = first_quant_hamiltonian_dense(m, n, t, v, w);
    FirstQuantState psi_t = psi0;
    psi_t.amplitudes = dense_expm(h1, time) * psi0.amplitudes;
    FockState fock_t = fock0;
    fock_t.amplitudes = dense_expm(build_hamiltonian_matrix(h2), time) * fock0.amplitudes;
    const FirstQuantState back_oracle = fock_to_first(fock_t);
    const double fid_oracle =
        std::abs(psi_t.amplitudes.dot(back_oracle.amplitudes));

    // Matched Trotter plans.
    const double dt = (steps > 0) ? time / steps : 0.0;
    const A1Plan plan1(dt, steps, splitting);
    const A2Plan plan2(dt, steps, splitting);
    const FirstQuantState a1 = evolve_a1(psi0, plan1, v, w, transform);
    const FockState a2 = evolve_a2(fock0, plan2, h2, spec);
    const FirstQuantState back_trotter = fock_to_first(a2);
    const double fid_trotter = std::abs(a1.amplitudes.dot(back_trotter.amplitudes));

    return FidelityReport{fid_oracle, fid_trotter, time, steps};
}

}  // namespace fockforge
