#pragma once

// Seeded, platform-independent randomness. Every random choice in the
// library flows through xoshiro256** generators whose states are derived
// from (master_seed, stream_tag, index) triples via splitmix64, so any
// experiment is reproducible bit-for-bit regardless of scheduling.

#include <array>
#include <cstdint>

namespace mis {

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Named sub-stream tags. Values are part of the on-disk reproducibility
// contract; do not renumber.
namespace stream {
inline constexpr std::uint64_t placement = 0x01;
inline constexpr std::uint64_t er_edges = 0x02;
inline constexpr std::uint64_t rewire = 0x03;
inline constexpr std::uint64_t sa_restart = 0x04;
inline constexpr std::uint64_t sa_shot = 0x05;
inline constexpr std::uint64_t pt_chain = 0x06;
inline constexpr std::uint64_t pt_exchange = 0x07;
inline constexpr std::uint64_t instance = 0x08;
inline constexpr std::uint64_t instance_seed_idx = 0x09;
inline constexpr std::uint64_t solver_sa = 0x0a;
inline constexpr std::uint64_t solver_pt = 0x0b;
}  // namespace stream

inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                           std::uint64_t index) {
    std::uint64_t s = splitmix64_mix(master);
    s = splitmix64_mix(s ^ tag);
    s = splitmix64_mix(s ^ index);
    return s;
}

class Xoshiro256 {
  public:
    explicit Xoshiro256(std::uint64_t seed) {
        // Canonical splitmix64 expansion of the seed into the state.
        std::uint64_t sm = seed;
        for (auto& w : s_) {
            sm += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = sm;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            w = z ^ (z >> 31);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Unbiased uniform draw from [0, n), n >= 1 (Lemire's method; fixed
    // algorithm so sequences match across standard libraries).
    std::uint64_t below(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t t = (0 - n) % n;
            while (lo < t) {
                m = static_cast<unsigned __int128>(next()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::array<std::uint64_t, 4> s_{};
};

}  // namespace mis
