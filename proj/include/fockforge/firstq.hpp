#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fockforge/fixedpoint.hpp"
#include "fockforge/lattice.hpp"
#include "fockforge/types.hpp"

namespace fockforge {

/// First-quantized N-particle state: dense complex amplitudes over M^N
/// position tuples X = (x_1..x_N), stored row-major with particle 1 slowest.
/// Site values are 1-based.
struct FirstQuantState {
    int particles;
    int sites;
    Eigen::VectorXcd amplitudes;
    bool antisymmetric = false;

    double norm() const { return amplitudes.norm(); }
};

/// M^N with the 2^20 size guard.
std::size_t first_quant_dim(int m, int n);
std::size_t tuple_to_index(int m, int n, const std::vector<int>& tuple);
std::vector<int> index_to_tuple(int m, int n, std::size_t index);

/// Max over adjacent transpositions of |psi(swap X) + psi(X)|; zero for a
/// perfectly antisymmetric tensor.
double antisymmetry_defect(const FirstQuantState& state);

struct A1Plan {
    double dt;
    int steps;
    Splitting splitting = Splitting::Strang2;
    std::optional<int> phase_bits;  // absent: exact phases

    A1Plan(double dt_, int steps_, Splitting splitting_ = Splitting::Strang2,
           std::optional<int> phase_bits_ = std::nullopt);
};

/// Slater determinant state: amplitude at tuple B is
/// det(orbitals[J rows, B columns]) / sqrt(N!). Rows of `orbitals` are the
/// single-particle wavefunctions phi_j(x); J is strictly ascending, 1-based.
FirstQuantState slater_state(const Eigen::MatrixXcd& orbitals,
                             const std::vector<int>& occupied, int m, int n);

/// Normalized projection (1/N!) sum_pi sgn(pi) P_pi applied to a raw tensor.
/// Throws if the projection is numerically zero (e.g. a doubly occupied tuple).
FirstQuantState antisymmetrize(const Eigen::VectorXcd& raw, int n, int m);

/// Multiplies every tuple amplitude by
/// exp(-i*dt*[sum_i V(x_i) + sum_{i<j} W(x_i,x_j)]). With phase_bits set,
/// Coulomb 1/d factors pass through inv_distance_fp before the angle forms.
void apply_diagonal_phase(FirstQuantState& state, const PotentialField& v,
                          const PairInteraction& w, double dt,
                          std::optional<int> phase_bits = std::nullopt);

/// exp(-i*dt*sum_i T^(i)): per particle leg, rotate into the momentum basis,
/// apply the eigenvalue phases, rotate back.
void apply_kinetic_step(FirstQuantState& state, const MomentumTransform& transform,
                        double dt);

/// Trotterized A1 evolution: lie-trotter-1 applies [diagonal, kinetic] per
/// step; strang-2 sandwiches the kinetic step between half-step diagonals.
FirstQuantState evolve_a1(FirstQuantState state, const A1Plan& plan,
                          const PotentialField& v, const PairInteraction& w,
                          const MomentumTransform& transform);

/// N*ceil(log2 M) qubits to store the binary-packed representation.
int qubit_cost_a1(int m, int n);

}  // namespace fockforge
