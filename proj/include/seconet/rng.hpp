#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace seconet {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Order-sensitive hash of a key tuple. Used both to derive per-purpose seeds
// and as a counter-based random source.
std::uint64_t hash_key(std::initializer_list<std::uint64_t> parts) noexcept;

// Uniform double in [0, 1) from the top 53 bits of a 64-bit word.
constexpr double to_unit(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double keyed_uniform(std::initializer_list<std::uint64_t> parts) noexcept {
    return to_unit(hash_key(parts));
}

// Independent stream tags. Each stochastic concern of a run draws from its
// own stream so that strategies sharing a seed also share every draw that
// does not depend on the vaccination outcome.
enum class Stream : std::uint64_t {
    population = 1,
    growth = 2,
    infection_seed = 3,
    transmission = 4,
    clearance = 5,
    immunity = 6,
    vaccination = 7,
};

inline std::uint64_t stream_key(std::uint64_t seed, Stream s) noexcept {
    return hash_key({seed, static_cast<std::uint64_t>(s)});
}

inline Rng make_stream(std::uint64_t seed, Stream s) { return Rng(stream_key(seed, s)); }

// Uniform in [0, 1) from an engine, independent of libstdc++'s
// generate_canonical.
inline double uniform01(Rng& rng) { return to_unit(rng()); }

// Exponential variate with the given mean. Strictly positive.
double sample_exponential(Rng& rng, double mean);
double exponential_from_unit(double u, double mean) noexcept;

// Uniform integer in [0, n). n must be > 0.
std::size_t uniform_index(Rng& rng, std::size_t n);

}  // namespace seconet
