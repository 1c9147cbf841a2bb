#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mfrisk
{
//! Engine used for every sampler in the library.
using Rng = std::mt19937_64;

//! SplitMix64 finaliser.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/*!
 * Independent stream for path \c index under \c master_seed. The stream
 * depends only on the pair, so results do not depend on how paths are
 * spread over worker threads.
 */
inline Rng path_rng(std::uint64_t master_seed, std::uint64_t index)
{
    std::seed_seq seq{
        static_cast<std::uint32_t>(splitmix64(master_seed)),
        static_cast<std::uint32_t>(splitmix64(master_seed) >> 32),
        static_cast<std::uint32_t>(splitmix64(index ^ 0x5851f42d4c957f2dULL)),
        static_cast<std::uint32_t>(splitmix64(index ^ 0x5851f42d4c957f2dULL)
                                   >> 32)};
    return Rng(seq);
}

//! Uniform on the open interval (0, 1).
inline double uniform_open(Rng& rng)
{
    // 53 random bits, shifted off zero
    return ((rng() >> 11) + 0.5) * 0x1.0p-53;
}

//! Unit-rate exponential.
inline double standard_exponential(Rng& rng)
{
    return -std::log(uniform_open(rng));
}

}  // namespace mfrisk
