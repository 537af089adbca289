#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fockforge/lattice.hpp"
#include "fockforge/types.hpp"

namespace fockforge {

/// Fock-space state over 2^M occupation bitstrings. Mode p (1-based)
/// corresponds to bit p-1 of the integer basis index.
struct FockState {
    int modes;
    Eigen::VectorXcd amplitudes;

    double norm() const { return amplitudes.norm(); }
};

FockState vacuum_state(int modes);
FockState fock_basis_state(int modes, std::uint32_t bitstring);

/// MSB-first binary label, zero padded to M digits (mode M is the leftmost
/// digit): bitstring 36 on 8 modes prints "00100100".
std::string bitstring_label(std::uint32_t bitstring, int modes);

enum class LadderKind { Create, Annihilate };

/// Result of a signed ladder action; the state is unnormalized and
/// zero_norm flags an annihilated-to-nothing result.
struct LadderAction {
    FockState state;
    bool zero_norm;
};

/// a_p^dagger / a_p with the Jordan-Wigner sign (-1)^(occupied modes below p).
LadderAction apply_ladder(const FockState& state, int p, LadderKind kind);

/// Dense 2^M x 2^M matrix of a ladder operator (entries are 0 or ±1).
Eigen::MatrixXd ladder_matrix(int modes, int p, LadderKind kind);

/// Fixed-particle-number sector: the C(M,N) bitstrings of popcount N,
/// ascending.
struct SectorBasis {
    int particles;
    std::vector<std::uint32_t> bitstrings;
};

SectorBasis build_sector(int modes, int particles);

/// h = T + diag(V) (Hermitian) together with the position-diagonal pair
/// interaction W.
struct SecondQuantHamiltonian {
    Eigen::MatrixXcd one_body;
    PairInteraction pair_diagonal;

    SecondQuantHamiltonian(Eigen::MatrixXcd one_body_, PairInteraction pair_diagonal_);
    int modes() const { return static_cast<int>(one_body.rows()); }
};

/// sum_pq h_pq a_p^dagger a_q + sum_{p<q} W_pq n_p n_q, assembled from the
/// signed ladder actions; restricted to a sector when one is given.
Eigen::MatrixXcd build_hamiltonian_matrix(const SecondQuantHamiltonian& h,
                                          const SectorBasis* sector = nullptr);

enum class A2Mode { Precomputed, Online };

struct A2Plan {
    double dt;
    int steps;
    Splitting splitting = Splitting::Strang2;
    A2Mode mode = A2Mode::Precomputed;
    std::optional<int> phase_bits;  // online mode; absent means exact phases

    A2Plan(double dt_, int steps_, Splitting splitting_ = Splitting::Strang2,
           A2Mode mode_ = A2Mode::Precomputed,
           std::optional<int> phase_bits_ = std::nullopt);
};

/// One first-order precomputed step in the fixed documented order:
/// one-body diagonal phases, exact two-mode hopping rotations for each
/// nonzero h_pq with p<q ascending, then diagonal pair phases.
void trotter_step_a2(FockState& state, const SecondQuantHamiltonian& h, double dt);

/// Diagonal physics computed per bitstring from its occupied modes:
/// exp(-i*dt*[sum_{p in s} V_p + sum_{p<q in s} strength*fp(1/d(p,q), b)]).
/// Requires a Coulomb-form interaction; never consults the W table.
void online_diagonal_phase(FockState& state, const LatticeSpec& spec,
                           const PotentialField& v, const PairInteraction& w,
                           double dt, std::optional<int> bits);

/// Trotterized A2 evolution. Precomputed and online modes apply the same
/// factor sequence; online recomputes all diagonal physics on the fly and
/// routes 1/d through the fixed-point model when bits are set. strang-2 is
/// the palindromic product (forward half-step factors, then reversed).
FockState evolve_a2(FockState state, const A2Plan& plan,
                    const SecondQuantHamiltonian& h, const LatticeSpec& spec);

/// M qubits for M sites in the unary representation.
int qubit_cost_a2(int modes);

}  // namespace fockforge
