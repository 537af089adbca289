#include "fockforge/fixedpoint.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace fockforge {

namespace {

void check_bits(int bits) {
    if (bits < 1 || bits > 52)
        throw std::invalid_argument("fixedpoint: bits must be in 1..52");
}

double round_half_even(double y) {
    const double f = std::floor(y);
    const double r = y - f;
    if (r > 0.5) return f + 1.0;
    if (r < 0.5) return f;
    return (std::fmod(f, 2.0) == 0.0) ? f : f + 1.0;
}

int ceil_log2(int b) { return (b <= 1) ? 0 : std::bit_width(static_cast<unsigned>(b - 1)); }

}  // namespace

double FixedPointValue::value() const {
    return std::ldexp(static_cast<double>(mantissa), scale - bits);
}

FixedPointValue fp_quantize(double x, int bits) {
    check_bits(bits);
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("fp_quantize: x must be finite and nonnegative");
    if (x == 0.0) return FixedPointValue{bits, 0, 0};

    int e = 0;
    const double f = std::frexp(x, &e);  // x = f * 2^e, f in [0.5, 1)
    int scale = std::max(0, (f == 0.5) ? e - 1 : e);
    double m = round_half_even(std::ldexp(x, bits - scale));
    if (m >= std::ldexp(1.0, bits)) {  // rounded up to 2^bits: widen the grid
        scale += 1;
        m = round_half_even(std::ldexp(x, bits - scale));
    }
    return FixedPointValue{bits, static_cast<std::uint64_t>(m), scale};
}

FixedPointValue fp_inv_sqrt(double x, int bits, int* iterations) {
    check_bits(bits);
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::invalid_argument("fp_inv_sqrt: x must be finite and positive");

    // Normalize x = m * 4^e with m in [1,4), so 1/sqrt(x) = 2^-e / sqrt(m).
    int p = 0;
    const double f = std::frexp(x, &p);
    int e;
    double m;
    if (p % 2 != 0) {
        e = (p - 1) / 2;
        m = 2.0 * f;
    } else {
        e = p / 2 - 1;
        m = 4.0 * f;
    }

    // 2-bit seed table: 1/sqrt of the geometric centre of four subintervals
    // of [1,4); worst-case relative error ~0.15 (better than 2 bits).
    static constexpr double kSeed[4] = {0.8693582636, 0.6914442160,
                                        0.5922932926, 0.5266403878};
    int idx = static_cast<int>((m - 1.0) * (4.0 / 3.0));
    if (idx > 3) idx = 3;
    double y = kSeed[idx];

    const int max_iter = ceil_log2(bits) + 2;
    const double tol = std::ldexp(1.0, -bits);
    int used = 0;
    for (int it = 0; it < max_iter; ++it) {
        const double next = 0.5 * y * (3.0 - m * y * y);
        ++used;
        const bool settled = std::abs(next - y) <= tol * std::abs(next);
        y = next;
        if (settled) break;
    }
    if (iterations) *iterations = used;

    return fp_quantize(std::ldexp(y, -e), bits);
}

FixedPointValue inv_distance_fp(const LatticeSpec& spec, int p, int q, int bits,
                                InvDistanceMethod method) {
    if (p == q) throw std::invalid_argument("inv_distance_fp: p == q has no distance");
    const double d = distance(spec, p, q);
    if (method == InvDistanceMethod::Quantize) return fp_quantize(1.0 / d, bits);
    return fp_inv_sqrt(d * d, bits);
}

}  // namespace fockforge
