#include "blockspin/spin.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace blockspin {

SpinConfig::SpinConfig(int n, int fill)
    : n_(n), bits_(static_cast<std::size_t>((n + 63) / 64), 0) {
    if (n < 0) throw std::invalid_argument("negative size");
    if (fill > 0) {
        for (auto& w : bits_) w = ~0ull;
        if (n % 64) bits_.back() = (1ull << (n % 64)) - 1;
    }
}

SpinConfig SpinConfig::random(int n, SplitMix64& rng) {
    SpinConfig s(n, -1);
    for (std::size_t k = 0; k < s.bits_.size(); ++k) s.bits_[k] = rng.next();
    if (n % 64) s.bits_.back() &= (1ull << (n % 64)) - 1;
    return s;
}

SpinConfig SpinConfig::from_signs(const std::vector<int>& signs) {
    SpinConfig s(static_cast<int>(signs.size()), -1);
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] != 1 && signs[i] != -1)
            throw std::invalid_argument("spins must be +1 or -1");
        if (signs[i] == 1) s.bits_[i / 64] |= 1ull << (i % 64);
    }
    return s;
}

void SpinConfig::set_spin(int i, int value) {
    if (value != 1 && value != -1)
        throw std::invalid_argument("spins must be +1 or -1");
    const std::uint64_t m = 1ull << (i % 64);
    std::uint64_t& w = bits_[static_cast<std::size_t>(i) / 64];
    w = (value == 1) ? (w | m) : (w & ~m);
}

int SpinConfig::plus_count(int lo, int hi) const {
    int count = 0;
    for (int w = lo / 64; w <= (hi - 1) / 64; ++w) {
        std::uint64_t word = bits_[static_cast<std::size_t>(w)];
        const int base = w * 64;
        if (lo > base) word &= ~0ull << (lo - base);
        if (hi - base < 64) word &= (1ull << (hi - base)) - 1;
        count += std::popcount(word);
    }
    return count;
}

int SpinConfig::block_sum(int b) const {
    const int h = n_ / 2;
    const int lo = b == 0 ? 0 : h;
    const int plus = plus_count(lo, lo + h);
    return 2 * plus - h;
}

std::vector<int> SpinConfig::to_signs() const {
    std::vector<int> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = spin(i);
    return out;
}

bool is_admissible(const Magnetization& m, int n) {
    const int h = n / 2;
    for (double v : {m.m1, m.m2}) {
        const double s = v * h / 2.0; // = (block sum)/2
        const double k = (v * h + h) / 2.0;
        if (std::abs(k - std::round(k)) > 1e-9) return false;
        if (std::abs(s) > h / 2.0 + 1e-9) return false;
    }
    return true;
}

Magnetization magnetization(const SpinConfig& sigma) {
    const double h = sigma.n() / 2.0;
    return {sigma.block_sum(0) / h, sigma.block_sum(1) / h};
}

LinkCounts link_counts(const SpinConfig& sigma) {
    const int h = sigma.n() / 2;
    const std::int64_t k1 = sigma.plus_count(0, h);
    const std::int64_t k2 = sigma.plus_count(h, 2 * h);
    const std::int64_t d1 = h - k1, d2 = h - k2;
    LinkCounts lc;
    // ordered pairs, diagonal included within blocks
    lc.Lb_plus = k1 * k1 + d1 * d1 + k2 * k2 + d2 * d2;
    lc.Lnb_plus = 2 * (k1 * k2 + d1 * d2);
    lc.Lnb_minus = 2 * (k1 * d2 + d1 * k2);
    return lc;
}

AlignedEdgeSums aligned_edge_sums(const BlockGraph& g, const SpinConfig& sigma) {
    if (g.n() != sigma.n())
        throw std::invalid_argument("graph and configuration sizes differ");
    // For row i, aligned columns are the +1 sites when sigma_i = +1 and the
    // -1 sites otherwise; adjacency rows are zero outside their legal block
    // columns and on the diagonal, so one mask per sign suffices.
    const std::size_t words = g.eps().words_per_row();
    std::vector<std::uint64_t> minus_mask(words);
    const auto sw = sigma.words();
    for (std::size_t k = 0; k < words; ++k) minus_mask[k] = ~sw[k];
    if (g.n() % 64)
        minus_mask[words - 1] &= (1ull << (g.n() % 64)) - 1;

    AlignedEdgeSums sums;
    for (int i = 0; i < g.n(); ++i) {
        const auto mask = sigma.spin(i) == 1
                              ? sw
                              : std::span<const std::uint64_t>(minus_mask);
        const auto anti = sigma.spin(i) == 1
                              ? std::span<const std::uint64_t>(minus_mask)
                              : sw;
        sums.eps_aligned +=
            static_cast<std::int64_t>(g.eps().row_count_and(i, mask));
        sums.delta_aligned +=
            static_cast<std::int64_t>(g.delta().row_count_and(i, mask));
        sums.delta_unaligned +=
            static_cast<std::int64_t>(g.delta().row_count_and(i, anti));
    }
    return sums;
}

} // namespace blockspin
