#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fockforge/types.hpp"

namespace fockforge {

/// Hermitian observable with its cached eigendecomposition.
class Observable {
  public:
    explicit Observable(Eigen::MatrixXcd matrix);

    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    const Eigen::MatrixXcd& eigenvectors() const { return eigenvectors_; }
    Eigen::VectorXcd eigenstate(int k) const;  // 1-based, ascending order
    int dimension() const { return static_cast<int>(matrix_.rows()); }

  private:
    Eigen::MatrixXcd matrix_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
};

/// Pointer-register momentum operator with spectrum exactly {0..M_p-1},
/// conjugated by the DFT so that exp(-2*pi*i*lambda*p/M_p)|x=0> = |x=lambda>
/// for integer lambda.
Eigen::MatrixXcd pointer_momentum_operator(int pointer_sites);

enum class Scheme { VonNeumann, Kitaev, Kickback, Ramsey };

std::string scheme_name(Scheme scheme);

/// Outcome distribution plus the pre-measurement joint state of a scheme.
struct SchemeResult {
    Scheme scheme;
    Eigen::VectorXd distribution;
    Eigen::VectorXcd final_state;
};

/// von Neumann pointer measurement: evolve system (x) pointer under
/// exp(-i*time*A⊗p̂) from |alpha>|x=0> and read the pointer position basis.
/// The default time 2*pi/M_p makes an integer eigenvalue read out exactly.
SchemeResult von_neumann_measure(const Observable& a, const Eigen::VectorXcd& system,
                                 int pointer_sites,
                                 std::optional<double> time = std::nullopt);

/// Probe-qubit circuit H, controlled-exp(-i*A*t), H; joint index is
/// probe*d + system.
SchemeResult kitaev_circuit(const Observable& a, double t,
                            const Eigen::VectorXcd& system);

/// H, G(lambda*t), H with G(theta) = |0><0| + e^{-i*theta}|1><1|; the system
/// register is eliminated. P(0) = (1 + cos(lambda*t))/2.
SchemeResult phase_kickback_circuit(double lambda, double t);

enum class RamseyPulse { Hadamard, PiHalf };

/// Pulse, free evolution under diag(0, lambda) for time t, pulse. The
/// hadamard pulse reproduces phase_kickback_circuit exactly; the pi/2 pulse
/// exp(-i*pi*sigma_y/4) gives the same cosine law with outcomes relabeled.
SchemeResult ramsey_protocol(double lambda, double t, RamseyPulse pulse);

/// Max-norm deviation between exp(-i*t*p̂⊗A) with p̂ = (1-sigma_x)/2 and the
/// Hadamard-conjugated controlled generator (H⊗1)exp(-i*t*((1-sigma_z)/2)⊗A)(H⊗1).
double generator_identity_check(const Observable& a, double t);

struct EigenvalueEstimate {
    double lambda_hat;  // canonical representative in [0, window/2]
    double window;      // aliasing window 2*pi / gcd(time grid)
};

/// Samples kickback outcomes at the given times (shots each, seeded), fits
/// the cosine law, and returns the estimate together with its aliasing
/// window. Deterministic for a fixed seed.
EigenvalueEstimate estimate_eigenvalue(const Observable& a, const Eigen::VectorXcd& state,
                                       const std::vector<double>& times, int shots,
                                       std::uint64_t seed);

}  // namespace fockforge
