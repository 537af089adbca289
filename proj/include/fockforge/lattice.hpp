#pragma once

#include <Eigen/Dense>

#include "fockforge/types.hpp"

namespace fockforge {

enum class Geometry { Ring, Line };

/// One-dimensional lattice of M sites at uniform spacing.
/// Sites are numbered 1..M throughout the library.
struct LatticeSpec {
    int sites;
    Geometry geometry;
    double spacing;

    LatticeSpec(int sites_, Geometry geometry_, double spacing_ = 1.0);
};

/// |p-q|*spacing on a line; minimum image min(|p-q|, M-|p-q|)*spacing on a ring.
double distance(const LatticeSpec& spec, int p, int q);

/// Hermitian one-body hopping matrix T. Real symmetric unless time reversal
/// symmetry is broken, in which case complex Hermitian entries are allowed.
struct KineticMatrix {
    Eigen::MatrixXcd entries;
    bool time_reversal_broken;

    explicit KineticMatrix(Eigen::MatrixXcd entries_, bool time_reversal_broken_ = false);
    int sites() const { return static_cast<int>(entries.rows()); }
};

/// On-site potential values V_r, one per site.
using PotentialField = Eigen::VectorXd;

enum class InteractionForm { Coulomb, Tabulated };

/// Symmetric pair interaction W_pq with zero diagonal (spinless fermions
/// never doubly occupy a site). A Coulomb-form interaction remembers the
/// lattice and prefactor so W_pq = strength / distance(p,q) can be recomputed
/// on the fly by the online phase paths.
struct PairInteraction {
    Eigen::MatrixXd values;
    InteractionForm form;
    double strength;   // Coulomb prefactor; 0 for tabulated
    LatticeSpec spec;  // geometry behind a Coulomb form

    int sites() const { return static_cast<int>(values.rows()); }
};

/// Unitary change of basis diagonalizing a kinetic matrix. Columns of
/// `matrix` are the momentum orbitals. Eigenvalues are stored in DFT index
/// order when is_dft, in index order for an exactly diagonal input, and
/// ascending otherwise.
struct MomentumTransform {
    Eigen::MatrixXcd matrix;
    Eigen::VectorXd eigenvalues;
    bool is_dft;
};

/// Nearest-neighbour ring hopping, T_{n,n±1 mod M} = -hopping. Exactly
/// diagonalized by the DFT with eigenvalues -2*hopping*cos(2*pi*k/M)
/// (for M = 2 the two neighbour directions coincide and the eigenvalues
/// are ∓hopping).
KineticMatrix build_ring_kinetic(const LatticeSpec& spec, double hopping);

/// Open-chain variant: T_{n,n+1} = -hopping with no wrap-around term.
KineticMatrix build_line_kinetic(const LatticeSpec& spec, double hopping);

PairInteraction coulomb_interaction(const LatticeSpec& spec, double strength);
PairInteraction tabulated_interaction(Eigen::MatrixXd values);

/// C_{kn} = exp(-2*pi*i*k*n/m)/sqrt(m).
Eigen::MatrixXcd dft_matrix(int m);

MomentumTransform momentum_transform(const KineticMatrix& kinetic);

}  // namespace fockforge
