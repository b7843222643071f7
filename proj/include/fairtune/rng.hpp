#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace fairtune {

// All randomness in a run flows from one user seed through named substreams
// ("split", "policy", "batches", "mutation", ...), so each stage is
// independently reproducible.

/// Mixes a base seed with a stream name into a new 64-bit seed.
std::uint64_t mix_seed(std::uint64_t seed, std::string_view stream);

/// Engine seeded from (seed, stream).
std::mt19937_64 substream(std::uint64_t seed, std::string_view stream);

// Sampling helpers with fully pinned-down arithmetic. The standard
// distributions are implementation-defined, which would silently break
// byte-identical artifact reruns when the toolchain changes.

/// Uniform integer in [0, bound) by rejection; bound must be > 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Uniform double in [0,1) with 53 random bits.
double uniform_unit(std::mt19937_64& rng);

/// Standard normal via Box-Muller.
double normal_unit(std::mt19937_64& rng);

/// Fisher-Yates permutation of 0..count-1.
std::vector<std::size_t> shuffled_indices(std::size_t count, std::mt19937_64& rng);

/// Sample `k` distinct elements of `pool` (order = draw order).
std::vector<std::size_t> sample_without_replacement(const std::vector<std::size_t>& pool,
                                                    std::size_t k, std::mt19937_64& rng);

}  // namespace fairtune
