#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fockforge {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view bytes);

/// Derives an independent child seed from a root seed and a label.
/// All randomness in the workbench flows from one 64-bit root through here.
std::uint64_t split_seed(std::uint64_t root, std::string_view label);

std::mt19937_64 seeded_engine(std::uint64_t root, std::string_view label);

/// Uniform in [0,1) from the top 53 bits; identical on every platform.
double next_uniform(std::mt19937_64& engine);

}  // namespace fockforge
