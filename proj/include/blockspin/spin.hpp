#ifndef BLOCKSPIN_SPIN_HPP
#define BLOCKSPIN_SPIN_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "blockspin/graph.hpp"
#include "blockspin/rng.hpp"

namespace blockspin {

/// One decision profile sigma in {-1,+1}^n, bit-packed (bit = 1 <=> +1) so
/// neighbor sums reduce to masked popcounts against adjacency rows.
class SpinConfig {
  public:
    SpinConfig() = default;
    explicit SpinConfig(int n, int fill = -1);

    static SpinConfig all_plus(int n) { return SpinConfig(n, +1); }
    static SpinConfig all_minus(int n) { return SpinConfig(n, -1); }
    static SpinConfig random(int n, SplitMix64& rng);
    static SpinConfig from_signs(const std::vector<int>& signs);

    int n() const { return n_; }
    int spin(int i) const {
        return ((bits_[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1ull)
                   ? +1
                   : -1;
    }
    void set_spin(int i, int value);
    void flip(int i) {
        bits_[static_cast<std::size_t>(i) / 64] ^= 1ull << (i % 64);
    }

    std::span<const std::uint64_t> words() const { return bits_; }

    /// Number of +1 spins among sites [lo, hi).
    int plus_count(int lo, int hi) const;
    /// Sum of spins over block b (0 = first half, 1 = second half).
    int block_sum(int b) const;

    std::vector<int> to_signs() const;

    bool operator==(const SpinConfig& o) const = default;

  private:
    int n_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Block-opinion vector m = (m1, m2), each the average spin of one block.
struct Magnetization {
    double m1 = 0.0;
    double m2 = 0.0;

    bool operator==(const Magnetization& o) const = default;
};

/// True when n*m_i/2 is an integer with the parity forced by block size n/2.
bool is_admissible(const Magnetization& m, int n);

Magnetization magnetization(const SpinConfig& sigma);

/// Ordered-pair counts of aligned/unaligned spin pairs. The within-block
/// count includes the diagonal pairs (i,i), which is what makes
///   Lb_plus  = n^2/8 (m1^2 + m2^2 + 2)
///   Lnb_plus = n^2/4 (m1 m2 + 1),   Lnb_minus = n^2/4 (1 - m1 m2)
/// exact integer identities. Edge sums elsewhere never see the diagonal, so
/// the mismatch is a sigma-independent constant.
struct LinkCounts {
    std::int64_t Lb_plus = 0;
    std::int64_t Lnb_plus = 0;
    std::int64_t Lnb_minus = 0;

    bool operator==(const LinkCounts& o) const = default;
};

LinkCounts link_counts(const SpinConfig& sigma);

/// Edge indicators summed over aligned pairs (the random part of the
/// Hamiltonian rewrite, and the quantities the concentration event bounds):
///   eps_aligned    = sum over i!=j, same block,   sigma_i sigma_j = +1 of eps_ij
///   delta_aligned  = sum over between-block pairs, sigma_i sigma_j = +1 of delta_ij
///   delta_unaligned= sum over between-block pairs, sigma_i sigma_j = -1 of delta_ij
struct AlignedEdgeSums {
    std::int64_t eps_aligned = 0;
    std::int64_t delta_aligned = 0;
    std::int64_t delta_unaligned = 0;
};

AlignedEdgeSums aligned_edge_sums(const BlockGraph& g, const SpinConfig& sigma);

} // namespace blockspin

#endif
