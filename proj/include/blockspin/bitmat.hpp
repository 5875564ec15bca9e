#ifndef BLOCKSPIN_BITMAT_HPP
#define BLOCKSPIN_BITMAT_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace blockspin {

/// Dense bit matrix with 64-bit packed rows. Row r is a contiguous span of
/// words_per_row() words, bit c of the row living at word c/64, bit c%64.
/// Bits past `cols` in the last word of a row are kept at zero so whole-row
/// popcounts need no masking.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64),
          words_(rows * wpr_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * wpr_ + c / 64] >> (c % 64)) & 1ull;
    }

    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t& w = words_[r * wpr_ + c / 64];
        const std::uint64_t m = 1ull << (c % 64);
        w = v ? (w | m) : (w & ~m);
    }

    std::span<const std::uint64_t> row(std::size_t r) const {
        return {words_.data() + r * wpr_, wpr_};
    }

    /// Number of set bits in row r.
    std::size_t row_count(std::size_t r) const {
        std::size_t c = 0;
        for (std::uint64_t w : row(r)) c += std::popcount(w);
        return c;
    }

    /// Number of set bits in (row r AND mask). mask must span words_per_row().
    std::size_t row_count_and(std::size_t r,
                              std::span<const std::uint64_t> mask) const {
        const std::uint64_t* a = words_.data() + r * wpr_;
        std::size_t c = 0;
        for (std::size_t k = 0; k < wpr_; ++k) c += std::popcount(a[k] & mask[k]);
        return c;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    BitMatrix transposed() const {
        BitMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < wpr_; ++k) {
                std::uint64_t w = words_[r * wpr_ + k];
                while (w) {
                    const int b = std::countr_zero(w);
                    t.set(k * 64 + static_cast<std::size_t>(b), r, true);
                    w &= w - 1;
                }
            }
        return t;
    }

    bool operator==(const BitMatrix& o) const = default;

    /// Byte-aligned row-major dump: each row occupies ceil(cols/8) bytes,
    /// bit c of a row at byte c/8, bit c%8. Matches the on-disk format.
    std::vector<std::uint8_t> to_bytes() const {
        const std::size_t stride = (cols_ + 7) / 8;
        std::vector<std::uint8_t> out(rows_ * stride, 0);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < stride; ++k) {
                const std::uint64_t w = words_[r * wpr_ + k / 8];
                out[r * stride + k] =
                    static_cast<std::uint8_t>(w >> (8 * (k % 8)));
            }
        return out;
    }

    static BitMatrix from_bytes(std::size_t rows, std::size_t cols,
                                std::span<const std::uint8_t> bytes) {
        BitMatrix m(rows, cols);
        const std::size_t stride = (cols + 7) / 8;
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t k = 0; k < stride; ++k) {
                const std::uint64_t b = bytes[r * stride + k];
                m.words_[r * m.wpr_ + k / 8] |= b << (8 * (k % 8));
            }
        // clear any padding bits the byte stream may have carried
        if (cols % 64) {
            const std::uint64_t tail = (1ull << (cols % 64)) - 1;
            for (std::size_t r = 0; r < rows; ++r)
                m.words_[(r + 1) * m.wpr_ - 1] &= tail;
        }
        return m;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace blockspin

#endif
