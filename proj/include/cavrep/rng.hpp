#pragma once
#include <cstdint>

namespace cavrep {

// SplitMix64: tiny splittable PRNG with 64-bit state. Used for all Monte
// Carlo sampling; per-trial streams are derived from (seed, stream index) so
// trials are reproducible independently of evaluation order or partitioning.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
        // Decorrelate (seed, index) pairs by running the index through one
        // scrambling round before mixing it with the seed.
        SplitMix64 ix(index + 0x9e3779b97f4a7c15ULL);
        return SplitMix64(seed ^ ix.next() ^ (index * 0xbf58476d1ce4e5b9ULL));
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::uint64_t state_;
};

} // namespace cavrep
