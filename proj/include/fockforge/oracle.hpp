#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fockforge/lattice.hpp"
#include "fockforge/types.hpp"

namespace fockforge {

/// Brute-force reference routines. These deliberately keep their own index
/// arithmetic and never call into the algorithm modules, so agreement with
/// them is evidence rather than tautology.

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// exp(-i*H*t) via eigendecomposition of a Hermitian H.
Eigen::MatrixXcd dense_expm(const Eigen::MatrixXcd& hamiltonian, double t);

/// Ascending eigenvalues of a Hermitian matrix.
Eigen::VectorXd exact_spectrum(const Eigen::MatrixXcd& hamiltonian);

/// The definitional signed permutation sum
///   sum_pi sgn(pi) prod_i C_{j_i, b_pi(i)}
/// that the determinant shortcut must reproduce. Indices are 1-based.
/// Factorial cost, guarded at N <= 6.
Complex brute_force_antisym_overlap(const Eigen::MatrixXcd& c,
                                    const std::vector<int>& j,
                                    const std::vector<int>& b);

/// Full first-quantized Hamiltonian sum_i T^(i) + sum_i V(x_i)
/// + sum_{i<j} W(x_i, x_j) as an explicit dense matrix over M^N position
/// tuples (particle 1 slowest, row-major).
Eigen::MatrixXcd first_quant_hamiltonian_dense(int m, int n, const KineticMatrix& t,
                                               const PotentialField& v,
                                               const PairInteraction& w);

}  // namespace fockforge
