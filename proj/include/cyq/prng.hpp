#pragma once

// Deterministic pseudo-randomness for general-position draws (pencil
// coefficients, retry perturbations, sample points). A single user seed
// plus a textual label fully determines each stream, so every run of the
// pipeline replays byte for byte; there is no global RNG state.

#include <cstdint>
#include <string>

namespace cyq {

inline uint64_t splitmix64_step(uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SeedStream {
public:
    SeedStream(uint64_t seed, const std::string& label) {
        // fold the label in FNV-1a style, then scramble once so that
        // ("a", seed) and ("b", seed) land in unrelated orbits
        uint64_t h = 0xCBF29CE484222325ULL;
        for (unsigned char c : label) {
            h ^= c;
            h *= 0x100000001B3ULL;
        }
        state_ = seed ^ h;
        splitmix64_step(state_);
    }

    uint64_t next_u64() { return splitmix64_step(state_); }

    // uniform-ish in [lo, hi] inclusive; ranges here are tiny, so the
    // modulo bias is irrelevant and determinism is what matters
    int64_t next_in(int64_t lo, int64_t hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        return lo + static_cast<int64_t>(next_u64() % span);
    }

    // nonzero integer in [-bound, bound]
    int64_t next_nonzero(int64_t bound) {
        for (;;) {
            int64_t v = next_in(-bound, bound);
            if (v != 0) return v;
        }
    }

private:
    uint64_t state_;
};

}  // namespace cyq
