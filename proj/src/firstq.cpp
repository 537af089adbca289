#include "fockforge/firstq.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fockforge {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

int permutation_parity(const std::vector<int>& perm) {
    int inversions = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b]) ++inversions;
    return (inversions % 2 == 0) ? 1 : -1;
}

// All permutations of 0..n-1 paired with their signs, in lexicographic order.
std::vector<std::pair<std::vector<int>, int>> signed_permutations(int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::pair<std::vector<int>, int>> out;
    do {
        out.emplace_back(perm, permutation_parity(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

void check_state_dims(const FirstQuantState& state, const char* who) {
    if (state.amplitudes.size() !=
        static_cast<Eigen::Index>(first_quant_dim(state.sites, state.particles)))
        throw std::invalid_argument(std::string(who) + ": amplitude length != M^N");
}

}  // namespace

std::size_t first_quant_dim(int m, int n) {
    if (m < 1 || n < 0) throw std::invalid_argument("first_quant_dim: bad dimensions");
    std::size_t dim = 1;
    for (int i = 0; i < n; ++i) {
        dim *= static_cast<std::size_t>(m);
        if (dim > kMaxFirstQuantDim)
            throw SizeGuardError("first_quant_dim: M^N exceeds 2^20");
    }
    return dim;
}

std::size_t tuple_to_index(int m, int n, const std::vector<int>& tuple) {
    if (static_cast<int>(tuple.size()) != n)
        throw std::invalid_argument("tuple_to_index: tuple length != N");
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        if (tuple[i] < 1 || tuple[i] > m)
            throw std::out_of_range("tuple_to_index: site out of range");
        idx = idx * m + static_cast<std::size_t>(tuple[i] - 1);
    }
    return idx;
}

std::vector<int> index_to_tuple(int m, int n, std::size_t index) {
    std::vector<int> tuple(n);
    for (int i = n - 1; i >= 0; --i) {
        tuple[i] = static_cast<int>(index % m) + 1;
        index /= m;
    }
    return tuple;
}

double antisymmetry_defect(const FirstQuantState& state) {
    const int n = state.particles;
    const int m = state.sites;
    if (n < 2) return 0.0;
    const std::size_t dim = first_quant_dim(m, n);
    double worst = 0.0;
    for (std::size_t idx = 0; idx < dim; ++idx) {
        std::vector<int> tuple = index_to_tuple(m, n, idx);
        for (int i = 0; i + 1 < n; ++i) {
            std::swap(tuple[i], tuple[i + 1]);
            const std::size_t swapped = tuple_to_index(m, n, tuple);
            std::swap(tuple[i], tuple[i + 1]);
            worst = std::max(worst,
                             std::abs(state.amplitudes(swapped) + state.amplitudes(idx)));
        }
    }
    return worst;
}

A1Plan::A1Plan(double dt_, int steps_, Splitting splitting_, std::optional<int> phase_bits_)
    : dt(dt_), steps(steps_), splitting(splitting_), phase_bits(phase_bits_) {
    if (!std::isfinite(dt)) throw std::invalid_argument("A1Plan: dt must be finite");
    if (steps < 1) throw std::invalid_argument("A1Plan: steps must be >= 1");
    if (phase_bits && *phase_bits < 1)
        throw std::invalid_argument("A1Plan: phase_bits must be >= 1");
}

FirstQuantState slater_state(const Eigen::MatrixXcd& orbitals,
                             const std::vector<int>& occupied, int m, int n) {
    if (orbitals.rows() != m || orbitals.cols() != m)
        throw std::invalid_argument("slater_state: orbital matrix must be MxM");
    if (static_cast<int>(occupied.size()) != n)
        throw std::invalid_argument("slater_state: need exactly N occupied orbitals");
    for (int i = 0; i < n; ++i) {
        if (occupied[i] < 1 || occupied[i] > m)
            throw std::out_of_range("slater_state: orbital index out of range");
        if (i > 0 && occupied[i] <= occupied[i - 1])
            throw std::invalid_argument("slater_state: orbitals must be strictly ascending");
    }

    const std::size_t dim = first_quant_dim(m, n);
    FirstQuantState state{n, m, Eigen::VectorXcd::Zero(dim), true};
    if (n == 0) {
        state.amplitudes(0) = 1.0;
        return state;
    }

    const double inv_sqrt_nfact = 1.0 / std::sqrt(factorial(n));
    const auto perms = signed_permutations(n);

    // One determinant per ascending site combination, scattered with signs
    // over its N! orderings; tuples with repeats keep amplitude zero.
    std::vector<int> comb(n);
    std::iota(comb.begin(), comb.end(), 1);
    Eigen::MatrixXcd sub(n, n);
    std::vector<int> permuted(n);
    while (true) {
        for (int r = 0; r < n; ++r)
            for (int cidx = 0; cidx < n; ++cidx)
                sub(r, cidx) = orbitals(occupied[r] - 1, comb[cidx] - 1);
        const Complex det = sub.determinant();
        if (det != Complex(0.0, 0.0)) {
            for (const auto& [perm, sign] : perms) {
                for (int i = 0; i < n; ++i) permuted[i] = comb[perm[i]];
                state.amplitudes(tuple_to_index(m, n, permuted)) =
                    static_cast<double>(sign) * det * inv_sqrt_nfact;
            }
        }

        // next ascending combination of n values from 1..m
        int i = n - 1;
        while (i >= 0 && comb[i] == m - (n - 1 - i)) --i;
        if (i < 0) break;
        ++comb[i];
        for (int k = i + 1; k < n; ++k) comb[k] = comb[k - 1] + 1;
    }

    const double nrm = state.norm();
    if (nrm > 0.0) state.amplitudes /= nrm;
    return state;
}

FirstQuantState antisymmetrize(const Eigen::VectorXcd& raw, int n, int m) {
    const std::size_t dim = first_quant_dim(m, n);
    if (raw.size() != static_cast<Eigen::Index>(dim))
        throw std::invalid_argument("antisymmetrize: raw tensor length != M^N");

    FirstQuantState state{n, m, Eigen::VectorXcd::Zero(dim), true};
    if (n <= 1) {
        state.amplitudes = raw;
    } else {
        const auto perms = signed_permutations(n);
        const double inv_nfact = 1.0 / factorial(n);
        std::vector<int> permuted(n);
        for (std::size_t idx = 0; idx < dim; ++idx) {
            const std::vector<int> tuple = index_to_tuple(m, n, idx);
            Complex acc = 0.0;
            for (const auto& [perm, sign] : perms) {
                for (int i = 0; i < n; ++i) permuted[i] = tuple[perm[i]];
                acc += static_cast<double>(sign) * raw(tuple_to_index(m, n, permuted));
            }
            state.amplitudes(idx) = acc * inv_nfact;
        }
    }

    const double nrm = state.norm();
    if (nrm <= 1e-12 * std::max(1.0, raw.norm()))
        throw std::domain_error(
            "antisymmetrize: input has numerically zero antisymmetric component");
    state.amplitudes /= nrm;
    return state;
}

void apply_diagonal_phase(FirstQuantState& state, const PotentialField& v,
                          const PairInteraction& w, double dt,
                          std::optional<int> phase_bits) {
    check_state_dims(state, "apply_diagonal_phase");
    const int n = state.particles;
    const int m = state.sites;
    if (v.size() != m || w.sites() != m)
        throw std::invalid_argument("apply_diagonal_phase: ingredient sizes disagree");
    if (phase_bits && w.form != InteractionForm::Coulomb)
        throw std::invalid_argument(
            "apply_diagonal_phase: phase_bits requires a Coulomb-form interaction");
    if (n == 0 || dt == 0.0) return;

    const std::size_t dim = state.amplitudes.size();
    std::vector<int> digits(n, 0);  // 0-based odometer, particle N fastest
    for (std::size_t idx = 0; idx < dim; ++idx) {
        double angle = 0.0;
        for (int i = 0; i < n; ++i) angle += dt * v(digits[i]);
        for (int i = 0; i < n; ++i)
            for (int k = i + 1; k < n; ++k) {
                if (digits[i] == digits[k]) continue;  // zero-diagonal W
                if (phase_bits) {
                    const FixedPointValue fp = inv_distance_fp(
                        w.spec, digits[i] + 1, digits[k] + 1, *phase_bits);
                    angle += dt * w.strength * fp.value();
                } else {
                    angle += dt * w.values(digits[i], digits[k]);
                }
            }
        state.amplitudes(idx) *= std::exp(Complex(0.0, -angle));

        for (int i = n - 1; i >= 0; --i) {
            if (++digits[i] < m) break;
            digits[i] = 0;
        }
    }
}

void apply_kinetic_step(FirstQuantState& state, const MomentumTransform& transform,
                        double dt) {
    check_state_dims(state, "apply_kinetic_step");
    const int m = state.sites;
    const int n = state.particles;
    if (transform.matrix.rows() != m)
        throw std::invalid_argument("apply_kinetic_step: transform dimension mismatch");
    if (n == 0 || dt == 0.0) return;

    // K = C exp(-i dt diag(eps)) C^dagger, applied to every particle leg.
    Eigen::VectorXcd phases(m);
    for (int k = 0; k < m; ++k)
        phases(k) = std::exp(Complex(0.0, -dt * transform.eigenvalues(k)));
    const Eigen::MatrixXcd kernel =
        transform.matrix * phases.asDiagonal() * transform.matrix.adjoint();

    Eigen::VectorXcd fiber(m), rotated(m);
    std::size_t inner = 1;  // stride of the current leg
    for (int leg = n - 1; leg >= 0; --leg) {
        const std::size_t block = inner * static_cast<std::size_t>(m);
        const std::size_t outer = state.amplitudes.size() / block;
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t in = 0; in < inner; ++in) {
                const std::size_t base = o * block + in;
                for (int x = 0; x < m; ++x) fiber(x) = state.amplitudes(base + x * inner);
                rotated.noalias() = kernel * fiber;
                for (int x = 0; x < m; ++x) state.amplitudes(base + x * inner) = rotated(x);
            }
        inner = block;
    }
}

FirstQuantState evolve_a1(FirstQuantState state, const A1Plan& plan,
                          const PotentialField& v, const PairInteraction& w,
                          const MomentumTransform& transform) {
    for (int s = 0; s < plan.steps; ++s) {
        if (plan.splitting == Splitting::LieTrotter1) {
            apply_diagonal_phase(state, v, w, plan.dt, plan.phase_bits);
            apply_kinetic_step(state, transform, plan.dt);
        } else {
            apply_diagonal_phase(state, v, w, 0.5 * plan.dt, plan.phase_bits);
            apply_kinetic_step(state, transform, plan.dt);
            apply_diagonal_phase(state, v, w, 0.5 * plan.dt, plan.phase_bits);
        }
    }
    return state;
}

int qubit_cost_a1(int m, int n) {
    if (m < 2 || n < 0) throw std::invalid_argument("qubit_cost_a1: bad dimensions");
    return n * std::bit_width(static_cast<unsigned>(m - 1));
}

}  // namespace fockforge
