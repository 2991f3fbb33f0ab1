#include "seconet/rng.hpp"

#include <cmath>

namespace seconet {

std::uint64_t hash_key(std::initializer_list<std::uint64_t> parts) noexcept {
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (auto p : parts) h = mix64(h ^ mix64(p));
    return h;
}

double exponential_from_unit(double u, double mean) noexcept {
    // u in [0,1): 1-u in (0,1], the log is finite. Guard the exact-1 case so
    // the result stays strictly positive.
    double x = -mean * std::log1p(-u);
    return x > 0.0 ? x : mean * 0x1.0p-53;
}

double sample_exponential(Rng& rng, double mean) {
    return exponential_from_unit(uniform01(rng), mean);
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
    // Lemire's multiply-shift with rejection.
    std::uint64_t x = rng();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        std::uint64_t threshold = -static_cast<std::uint64_t>(n) % n;
        while (low < threshold) {
            x = rng();
            m = static_cast<__uint128_t>(x) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::size_t>(m >> 64);
}

}  // namespace seconet
