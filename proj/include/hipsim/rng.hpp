#pragma once

#include <cstdint>
#include <random>

namespace hipsim {

// splitmix64; used only to mix stream keys into engine seeds.
inline std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_keys(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0)
{
    std::uint64_t s = seed;
    std::uint64_t h = splitmix64(s);
    s ^= a * 0x2545f4914f6cdd1dULL;
    h ^= splitmix64(s);
    s ^= b * 0x9e3779b97f4a7c15ULL;
    h ^= splitmix64(s);
    return h;
}

using Engine = std::mt19937_64;

// Independent stream keyed by (seed, a, b).  Draw order within a stream is
// part of the reproducibility contract; never interleave unrelated draws.
inline Engine stream_engine(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0)
{
    return Engine(mix_keys(seed, a, b));
}

}  // namespace hipsim
