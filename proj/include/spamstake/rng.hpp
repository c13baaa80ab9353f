#ifndef SPAMSTAKE_RNG_HPP
#define SPAMSTAKE_RNG_HPP

#include <cstdint>
#include <string_view>
#include <vector>

namespace spamstake {

// Deterministic PRNG with identical output on every platform (std::shuffle
// and the <random> distributions are not bit-stable across standard
// libraries, so everything seeded goes through this).
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, bound) via rejection sampling.
    uint64_t bounded(uint64_t bound) {
        if (bound <= 1) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    double uniform01() {
        return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
    }

private:
    uint64_t state_;
};

// FNV-1a; stable replacement for std::hash when deriving named streams.
inline uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Independent stream for a named actor/component under one master seed.
inline SplitMix64 derive_stream(uint64_t master_seed, std::string_view name) {
    return SplitMix64(master_seed ^ fnv1a(name));
}

template <typename T>
void deterministic_shuffle(std::vector<T>& v, SplitMix64& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng.bounded(i));
        using std::swap;
        swap(v[i - 1], v[j]);
    }
}

}  // namespace spamstake

#endif
