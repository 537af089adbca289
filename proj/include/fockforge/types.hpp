#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace fockforge {

using Complex = std::complex<double>;

/// Trotter product ordering shared by the A1 and A2 evolution plans.
enum class Splitting { LieTrotter1, Strang2 };

/// Thrown when a request exceeds the dense-simulation size guards.
/// Guards fail loudly instead of silently switching to an approximation.
class SizeGuardError : public std::runtime_error {
  public:
    explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::size_t kMaxFirstQuantDim = std::size_t{1} << 20;  // M^N
inline constexpr int kMaxFockModes = 14;                                // 2^M

}  // namespace fockforge
