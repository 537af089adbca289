#include "fockforge/fock.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "fockforge/fixedpoint.hpp"

namespace fockforge {

namespace {

std::size_t fock_dim(int modes) {
    if (modes < 1) throw std::invalid_argument("fock: need at least one mode");
    if (modes > kMaxFockModes)
        throw SizeGuardError("fock: 2^M guard exceeded (M <= 14)");
    return std::size_t{1} << modes;
}

void check_mode(int modes, int p, const char* who) {
    if (p < 1 || p > modes)
        throw std::out_of_range(std::string(who) + ": mode index out of range");
}

// (-1)^(number of occupied modes strictly below p)
inline double jw_sign(std::uint32_t s, int p) {
    const std::uint32_t below = s & ((std::uint32_t{1} << (p - 1)) - 1);
    return (std::popcount(below) % 2 == 0) ? 1.0 : -1.0;
}

// Occupied modes of s strictly between p and q (p < q, 1-based).
inline std::uint32_t between_mask(int p, int q) {
    return ((std::uint32_t{1} << (q - 1)) - 1) & ~((std::uint32_t{1} << p) - 1);
}

}  // namespace

FockState vacuum_state(int modes) {
    FockState state{modes, Eigen::VectorXcd::Zero(fock_dim(modes))};
    state.amplitudes(0) = 1.0;
    return state;
}

FockState fock_basis_state(int modes, std::uint32_t bitstring) {
    const std::size_t dim = fock_dim(modes);
    if (bitstring >= dim)
        throw std::out_of_range("fock_basis_state: bitstring out of range");
    FockState state{modes, Eigen::VectorXcd::Zero(dim)};
    state.amplitudes(bitstring) = 1.0;
    return state;
}

std::string bitstring_label(std::uint32_t bitstring, int modes) {
    std::string label(modes, '0');
    for (int p = 1; p <= modes; ++p)
        if (bitstring & (std::uint32_t{1} << (p - 1))) label[modes - p] = '1';
    return label;
}

LadderAction apply_ladder(const FockState& state, int p, LadderKind kind) {
    check_mode(state.modes, p, "apply_ladder");
    const std::size_t dim = fock_dim(state.modes);
    const std::uint32_t bit = std::uint32_t{1} << (p - 1);
    FockState out{state.modes, Eigen::VectorXcd::Zero(dim)};
    for (std::uint32_t s = 0; s < dim; ++s) {
        const Complex a = state.amplitudes(s);
        if (a == Complex(0.0, 0.0)) continue;
        if (kind == LadderKind::Create) {
            if (s & bit) continue;  // Pauli exclusion
            out.amplitudes(s | bit) += jw_sign(s, p) * a;
        } else {
            if (!(s & bit)) continue;
            out.amplitudes(s & ~bit) += jw_sign(s, p) * a;
        }
    }
    const bool zero = out.amplitudes.isZero(0.0);
    return LadderAction{std::move(out), zero};
}

Eigen::MatrixXd ladder_matrix(int modes, int p, LadderKind kind) {
    check_mode(modes, p, "ladder_matrix");
    const std::size_t dim = fock_dim(modes);
    const std::uint32_t bit = std::uint32_t{1} << (p - 1);
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(dim, dim);
    for (std::uint32_t s = 0; s < dim; ++s) {
        if (kind == LadderKind::Create) {
            if (!(s & bit)) mat(s | bit, s) = jw_sign(s, p);
        } else {
            if (s & bit) mat(s & ~bit, s) = jw_sign(s, p);
        }
    }
    return mat;
}

SectorBasis build_sector(int modes, int particles) {
    const std::size_t dim = fock_dim(modes);
    if (particles < 0 || particles > modes)
        throw std::invalid_argument("build_sector: particle count out of range");
    SectorBasis basis{particles, {}};
    for (std::uint32_t s = 0; s < dim; ++s)
        if (std::popcount(s) == particles) basis.bitstrings.push_back(s);
    return basis;
}

SecondQuantHamiltonian::SecondQuantHamiltonian(Eigen::MatrixXcd one_body_,
                                               PairInteraction pair_diagonal_)
    : one_body(std::move(one_body_)), pair_diagonal(std::move(pair_diagonal_)) {
    if (one_body.rows() != one_body.cols())
        throw std::invalid_argument("SecondQuantHamiltonian: one_body must be square");
    if ((one_body - one_body.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("SecondQuantHamiltonian: one_body is not Hermitian");
    if (pair_diagonal.sites() != modes())
        throw std::invalid_argument("SecondQuantHamiltonian: W dimension mismatch");
}

Eigen::MatrixXcd build_hamiltonian_matrix(const SecondQuantHamiltonian& h,
                                          const SectorBasis* sector) {
    const int m = h.modes();
    const std::size_t full_dim = fock_dim(m);

    std::vector<std::uint32_t> basis;
    if (sector) {
        basis = sector->bitstrings;
    } else {
        basis.resize(full_dim);
        for (std::size_t s = 0; s < full_dim; ++s) basis[s] = static_cast<std::uint32_t>(s);
    }
    const std::size_t dim = basis.size();

    auto locate = [&](std::uint32_t s) -> std::ptrdiff_t {
        if (!sector) return static_cast<std::ptrdiff_t>(s);
        const auto it = std::lower_bound(basis.begin(), basis.end(), s);
        if (it == basis.end() || *it != s) return -1;
        return it - basis.begin();
    };

    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const std::uint32_t s = basis[col];

        double diag = 0.0;
        for (int p = 1; p <= m; ++p)
            if (s & (std::uint32_t{1} << (p - 1))) diag += h.one_body(p - 1, p - 1).real();
        for (int p = 1; p <= m; ++p)
            for (int q = p + 1; q <= m; ++q) {
                const std::uint32_t both =
                    (std::uint32_t{1} << (p - 1)) | (std::uint32_t{1} << (q - 1));
                if ((s & both) == both) diag += h.pair_diagonal.values(p - 1, q - 1);
            }
        mat(col, col) += diag;

        // hopping h_pq a_p^dagger a_q, p != q
        for (int q = 1; q <= m; ++q) {
            const std::uint32_t bq = std::uint32_t{1} << (q - 1);
            if (!(s & bq)) continue;
            for (int p = 1; p <= m; ++p) {
                if (p == q) continue;
                const std::uint32_t bp = std::uint32_t{1} << (p - 1);
                if (s & bp) continue;
                const Complex hpq = h.one_body(p - 1, q - 1);
                if (hpq == Complex(0.0, 0.0)) continue;
                const std::uint32_t t = (s & ~bq) | bp;
                const double sign = jw_sign(s, q) * jw_sign(s & ~bq, p);
                const std::ptrdiff_t row = locate(t);
                if (row >= 0) mat(row, col) += sign * hpq;
            }
        }
    }
    return mat;
}

A2Plan::A2Plan(double dt_, int steps_, Splitting splitting_, A2Mode mode_,
               std::optional<int> phase_bits_)
    : dt(dt_), steps(steps_), splitting(splitting_), mode(mode_), phase_bits(phase_bits_) {
    if (!std::isfinite(dt)) throw std::invalid_argument("A2Plan: dt must be finite");
    if (steps < 1) throw std::invalid_argument("A2Plan: steps must be >= 1");
    if (phase_bits && *phase_bits < 1)
        throw std::invalid_argument("A2Plan: phase_bits must be >= 1");
}

namespace {

void check_fock_dims(const FockState& state, int m, const char* who) {
    if (state.modes != m ||
        state.amplitudes.size() != static_cast<Eigen::Index>(fock_dim(state.modes)))
        throw std::invalid_argument(std::string(who) + ": state dimension mismatch");
}

void apply_onebody_diagonal(FockState& state, const SecondQuantHamiltonian& h, double dt) {
    if (dt == 0.0) return;
    const int m = h.modes();
    const std::size_t dim = state.amplitudes.size();
    for (std::uint32_t s = 0; s < dim; ++s) {
        double angle = 0.0;
        for (int p = 1; p <= m; ++p)
            if (s & (std::uint32_t{1} << (p - 1))) angle += dt * h.one_body(p - 1, p - 1).real();
        state.amplitudes(s) *= std::exp(Complex(0.0, -angle));
    }
}

// exp(-i dt (h_pq a_p^dagger a_q + h.c.)) as exact 2x2 rotations on the
// singly-occupied pairs; doubly/empty occupied bitstrings are untouched.
void apply_hopping_rotation(FockState& state, int p, int q, Complex hpq, double dt) {
    const double r = std::abs(hpq);
    if (r == 0.0 || dt == 0.0) return;
    const std::uint32_t bp = std::uint32_t{1} << (p - 1);
    const std::uint32_t bq = std::uint32_t{1} << (q - 1);
    const double c = std::cos(r * dt);
    const double sn = std::sin(r * dt);
    const Complex dir = hpq / r;
    const std::uint32_t mid = between_mask(p, q);
    const std::size_t dim = state.amplitudes.size();
    for (std::uint32_t s = 0; s < dim; ++s) {
        if (!(s & bq) || (s & bp)) continue;
        const std::uint32_t t = (s ^ bq) | bp;
        const double eta = (std::popcount(s & mid) % 2 == 0) ? 1.0 : -1.0;
        const Complex w = eta * dir;  // <t| h a_p^dag a_q |s> / r
        const Complex u = state.amplitudes(t);
        const Complex v = state.amplitudes(s);
        state.amplitudes(t) = c * u - Complex(0.0, sn) * w * v;
        state.amplitudes(s) = c * v - Complex(0.0, sn) * std::conj(w) * u;
    }
}

void apply_hoppings(FockState& state, const SecondQuantHamiltonian& h, double dt,
                    bool reversed) {
    const int m = h.modes();
    if (!reversed) {
        for (int p = 1; p <= m; ++p)
            for (int q = p + 1; q <= m; ++q)
                apply_hopping_rotation(state, p, q, h.one_body(p - 1, q - 1), dt);
    } else {
        for (int p = m; p >= 1; --p)
            for (int q = m; q > p; --q)
                apply_hopping_rotation(state, p, q, h.one_body(p - 1, q - 1), dt);
    }
}

void apply_pair_diagonal(FockState& state, const PairInteraction& w, double dt) {
    if (dt == 0.0) return;
    const int m = w.sites();
    const std::size_t dim = state.amplitudes.size();
    for (std::uint32_t s = 0; s < dim; ++s) {
        double angle = 0.0;
        for (int p = 1; p <= m; ++p) {
            if (!(s & (std::uint32_t{1} << (p - 1)))) continue;
            for (int q = p + 1; q <= m; ++q)
                if (s & (std::uint32_t{1} << (q - 1))) angle += dt * w.values(p - 1, q - 1);
        }
        state.amplitudes(s) *= std::exp(Complex(0.0, -angle));
    }
}

enum class FactorOrder { Forward, Reverse };

void apply_step_factors(FockState& state, const SecondQuantHamiltonian& h,
                        const LatticeSpec& spec, const A2Plan& plan, double dt,
                        FactorOrder order) {
    const bool online = plan.mode == A2Mode::Online;
    const PotentialField zero_v = PotentialField::Zero(h.modes());

    auto pair_factor = [&](double step_dt) {
        if (online)
            online_diagonal_phase(state, spec, zero_v, h.pair_diagonal, step_dt,
                                  plan.phase_bits);
        else
            apply_pair_diagonal(state, h.pair_diagonal, step_dt);
    };

    if (order == FactorOrder::Forward) {
        apply_onebody_diagonal(state, h, dt);
        apply_hoppings(state, h, dt, false);
        pair_factor(dt);
    } else {
        pair_factor(dt);
        apply_hoppings(state, h, dt, true);
        apply_onebody_diagonal(state, h, dt);
    }
}

}  // namespace

void trotter_step_a2(FockState& state, const SecondQuantHamiltonian& h, double dt) {
    check_fock_dims(state, h.modes(), "trotter_step_a2");
    apply_onebody_diagonal(state, h, dt);
    apply_hoppings(state, h, dt, false);
    apply_pair_diagonal(state, h.pair_diagonal, dt);
}

void online_diagonal_phase(FockState& state, const LatticeSpec& spec,
                           const PotentialField& v, const PairInteraction& w,
                           double dt, std::optional<int> bits) {
    check_fock_dims(state, spec.sites, "online_diagonal_phase");
    if (w.form != InteractionForm::Coulomb)
        throw std::invalid_argument(
            "online_diagonal_phase: needs a distance-based (Coulomb) interaction");
    if (v.size() != spec.sites)
        throw std::invalid_argument("online_diagonal_phase: potential size mismatch");
    if (bits && *bits < 1)
        throw std::invalid_argument("online_diagonal_phase: bits must be >= 1");
    if (dt == 0.0) return;

    const std::size_t dim = state.amplitudes.size();
    std::vector<int> occupied;
    occupied.reserve(spec.sites);
    for (std::uint32_t s = 0; s < dim; ++s) {
        occupied.clear();
        std::uint32_t rest = s;
        while (rest) {
            occupied.push_back(std::countr_zero(rest) + 1);
            rest &= rest - 1;
        }
        double angle = 0.0;
        for (int p : occupied) angle += dt * v(p - 1);
        for (std::size_t a = 0; a < occupied.size(); ++a)
            for (std::size_t b = a + 1; b < occupied.size(); ++b) {
                const int p = occupied[a];
                const int q = occupied[b];
                if (bits)
                    angle += dt * w.strength * inv_distance_fp(spec, p, q, *bits).value();
                else
                    angle += (dt * w.strength) / distance(spec, p, q);
            }
        state.amplitudes(s) *= std::exp(Complex(0.0, -angle));
    }
}

FockState evolve_a2(FockState state, const A2Plan& plan, const SecondQuantHamiltonian& h,
                    const LatticeSpec& spec) {
    check_fock_dims(state, h.modes(), "evolve_a2");
    if (spec.sites != h.modes())
        throw std::invalid_argument("evolve_a2: lattice and Hamiltonian sizes disagree");
    for (int s = 0; s < plan.steps; ++s) {
        if (plan.splitting == Splitting::LieTrotter1) {
            apply_step_factors(state, h, spec, plan, plan.dt, FactorOrder::Forward);
        } else {
            apply_step_factors(state, h, spec, plan, 0.5 * plan.dt, FactorOrder::Forward);
            apply_step_factors(state, h, spec, plan, 0.5 * plan.dt, FactorOrder::Reverse);
        }
    }
    return state;
}

int qubit_cost_a2(int modes) {
    if (modes < 1) throw std::invalid_argument("qubit_cost_a2: modes must be >= 1");
    return modes;
}

}  // namespace fockforge
