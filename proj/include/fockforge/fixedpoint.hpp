#pragma once

#include <cstdint>

#include "fockforge/lattice.hpp"

namespace fockforge {

/// b-bit scaled-integer value modelling the reversible scratch arithmetic:
/// represented real = mantissa * 2^(scale - bits), mantissa < 2^bits.
/// The scale is floored at 0, so values below 1 use a pure fraction grid.
struct FixedPointValue {
    int bits;
    std::uint64_t mantissa;
    int scale;

    double value() const;
};

/// Nearest representable value with round-half-to-even.
/// |value - x| <= 2^(scale - bits - 1). Supports 1 <= bits <= 52; the model
/// computes in binary64, so finer grids would be meaningless.
FixedPointValue fp_quantize(double x, int bits);

/// 1/sqrt(x) by Newton-Raphson iteration y <- y*(3 - x*y^2)/2 from a 2-bit
/// table seed, iterated until successive iterates agree at `bits` bits and
/// quantized. Result is within 2*2^(-bits) relative error. The iteration
/// count (at most ceil(log2 bits) + 2) is reported through `iterations`
/// when non-null.
FixedPointValue fp_inv_sqrt(double x, int bits, int* iterations = nullptr);

enum class InvDistanceMethod { Quantize, NewtonRaphson };

/// b-bit approximation of 1/distance(p,q): direct quantization on the 1D
/// lattice, or fp_inv_sqrt of the squared distance to exercise the
/// Newton-Raphson path.
FixedPointValue inv_distance_fp(const LatticeSpec& spec, int p, int q, int bits,
                                InvDistanceMethod method = InvDistanceMethod::Quantize);

}  // namespace fockforge
