#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fockforge/firstq.hpp"
#include "fockforge/fock.hpp"

namespace fockforge {

/// Determinant of the NxN submatrix of C with rows J and columns B, column
/// order as given (sign-sensitive). J must be strictly ascending; indices
/// are 1-based. Uses closed-form cofactor expansion for N <= 3 so the
/// overlap is exactly multilinear in each row.
Complex plucker_overlap(const Eigen::MatrixXcd& c, const std::vector<int>& rows_j,
                        const std::vector<int>& cols_b);

/// Map an antisymmetric first-quantized state into the C(M,N) sector of
/// Fock space: the amplitude on the bitstring of an ascending tuple K is
/// sqrt(N!) * Psi(K). Rejects inputs whose antisymmetry defect exceeds 1e-8
/// rather than silently projecting.
FockState first_to_fock(const FirstQuantState& state);

/// Inverse of first_to_fock. The input must be supported on a single
/// particle-number sector.
FirstQuantState fock_to_first(const FockState& state);

struct FidelityReport {
    double oracle_fidelity;   // dense-exponential evolution on both sides
    double trotter_fidelity;  // matched Trotter plans on both sides
    double time;
    int steps;
};

/// Evolves the Slater state of the given kinetic eigenorbitals under A1 and
/// its image under A2, maps back, and reports |<psi_A1|psi_A2>| for the
/// dense-oracle route and for matched Trotter plans.
FidelityReport compare_evolutions(const LatticeSpec& spec, const KineticMatrix& t,
                                  const PotentialField& v, const PairInteraction& w,
                                  const std::vector<int>& orbitals, double time,
                                  int steps, Splitting splitting = Splitting::Strang2);

}  // namespace fockforge
