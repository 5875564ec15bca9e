#ifndef BLOCKSPIN_RNG_HPP
#define BLOCKSPIN_RNG_HPP

#include <cstdint>

namespace blockspin {

// SplitMix64 (Steele/Lea/Flood). Counter-based: the state advances by a fixed
// odd constant and every output is a finalizer of the counter, so streams are
// cheap to split by hashing a new seed. Output is identical on every platform,
// which is what makes graphs and chains reproducible from (seed) alone.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 mantissa bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Fixed-point multiply; the bias of
    /// bound/2^64 is far below anything the statistical tests can see.
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    std::uint64_t state() const { return state_; }

  private:
    std::uint64_t state_;
};

/// One avalanche round of the SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Derive the seed of an independent substream from a base seed and a key.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t key) {
    return mix64(seed + 0x9e3779b97f4a7c15ull * (key + 1));
}

inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t k1,
                                std::uint64_t k2) {
    return split_seed(split_seed(seed, k1), k2);
}

} // namespace blockspin

#endif
