#pragma once

#include <cstdint>

namespace spanner {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based generator: word(i) = mix64(mix64(key) ^ mix64(i + C)).
// A stream is identified by its key alone, so draws are addressable and
// independent of call order. split() derives a child key.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed = 0) : key_(mix64(seed)) {}

    CounterRng split(std::uint64_t tag) const {
        CounterRng child;
        child.key_ = mix64(key_ ^ mix64(tag ^ 0xd1b54a32d192ed03ULL));
        return child;
    }

    std::uint64_t word(std::uint64_t counter) const {
        return mix64(key_ ^ mix64(counter + 0x632be59bd9b4e019ULL));
    }

    // Uniform in [0, 1) with 53 bits.
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(word(counter) >> 11) * 0x1.0p-53;
    }

    bool bernoulli(std::uint64_t counter, double p) const {
        if (p >= 1.0) return true;
        if (p <= 0.0) return false;
        return uniform(counter) < p;
    }

    // Sequential interface over the same counter space.
    std::uint64_t next() { return word(pos_++); }
    double next_uniform() { return uniform(pos_++); }

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_ = 0;
    std::uint64_t pos_ = 0;
};

}  // namespace spanner
