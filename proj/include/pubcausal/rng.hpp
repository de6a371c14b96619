#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace pubcausal {

// splitmix64; used both as a generator seeder and as the mixing step of
// the label->seed derivation below.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Counter-free seed fan-out: the derived seed depends only on the master
// seed and the label, never on scheduling order.
inline uint64_t derive_seed(uint64_t master, const std::string& label) {
    uint64_t state = master ^ fnv1a64(label);
    return splitmix64(state);
}

inline std::mt19937_64 make_rng(uint64_t seed) {
    uint64_t s = seed;
    // widen a possibly low-entropy seed before handing it to mt19937_64
    const uint64_t a = splitmix64(s);
    std::seed_seq seq{static_cast<uint32_t>(a), static_cast<uint32_t>(a >> 32),
                      static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace pubcausal
