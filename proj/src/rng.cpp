#include "fairtune/rng.hpp"

#include <cmath>
#include <numbers>

#include "fairtune/errors.hpp"

namespace fairtune {

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::string_view stream) {
    return mix64(seed ^ mix64(fnv1a(stream)));
}

std::mt19937_64 substream(std::uint64_t seed, std::string_view stream) {
    return std::mt19937_64(mix_seed(seed, stream));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw ConfigError("uniform_below: bound must be positive");
    // Rejection below the largest multiple of bound keeps the draw unbiased.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double normal_unit(std::mt19937_64& rng) {
    double u1 = uniform_unit(rng);
    while (u1 == 0.0) u1 = uniform_unit(rng);
    const double u2 = uniform_unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<std::size_t> shuffled_indices(std::size_t count, std::mt19937_64& rng) {
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = i;
    for (std::size_t i = count; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(idx[i - 1], idx[j]);
    }
    return idx;
}

std::vector<std::size_t> sample_without_replacement(const std::vector<std::size_t>& pool,
                                                    std::size_t k, std::mt19937_64& rng) {
    if (k > pool.size()) throw ConfigError("sample_without_replacement: k exceeds pool size");
    std::vector<std::size_t> scratch = pool;
    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(uniform_below(rng, scratch.size() - i));
        std::swap(scratch[i], scratch[j]);
        out.push_back(scratch[i]);
    }
    return out;
}

}  // namespace fairtune
