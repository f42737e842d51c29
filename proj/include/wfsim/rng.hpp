#pragma once

#include <cstdint>
#include <random>

namespace wfsim {

/// splitmix64 mixing function (Steele, Lea, Flood 2014).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic per-trajectory stream: the trajectory seed is
/// splitmix64(master_seed + index * golden_gamma), so streams can be
/// created independently and in any order.
inline std::mt19937_64 trajectory_rng(std::uint64_t master_seed, std::uint64_t trajectory_index) {
    return std::mt19937_64(splitmix64(master_seed + trajectory_index * 0x9e3779b97f4a7c15ULL));
}

/// Uniform double in [0, 1) with 53 random bits. Hand-rolled instead of
/// std::uniform_real_distribution so the byte stream is identical across
/// standard library implementations.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace wfsim
