#pragma once

#include <cstddef>
#include <cstdint>

namespace claycop {

/// Counter-based pseudo-random stream built on the SplitMix64 finalizer.
///
/// Two streams constructed from the same (master_seed, substream_index)
/// produce bit-identical sequences. Distinct substream indices key into
/// pseudo-randomly offset positions of the underlying sequence, so any
/// number of streams can be consumed concurrently or in any order without
/// affecting each other's output.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t master_seed,
                          std::uint64_t substream_index = 0)
        : key_(mix64(mix64(master_seed + kGamma) ^
                     mix64(substream_index + 0x6A09E667F3BCC909ULL))) {}

    std::uint64_t next_u64() { return mix64(key_ + ++counter_ * kGamma); }

    /// Uniform draw strictly inside (0,1).
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform index in [0, n); n must be positive.
    std::size_t next_index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// SplitMix64 finalizer; bijective on 64-bit words.
    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace claycop
