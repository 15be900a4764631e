#pragma once

#include <bit>
#include <concepts>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "semantrix/io.hpp"

namespace semantrix {

namespace detail {

// Fixed-width bit packing into 64-bit words. Values may straddle a word
// boundary; width 0 means every value is zero and nothing is stored.
inline void pack_value(std::vector<std::uint64_t>& words, std::uint64_t bit_off,
                       std::uint64_t value, unsigned width) {
    const std::uint64_t w = bit_off / 64;
    const unsigned shift = static_cast<unsigned>(bit_off % 64);
    words[w] |= value << shift;
    if (shift + width > 64) {
        words[w + 1] |= value >> (64 - shift);
    }
}

inline std::uint64_t unpack_value(const std::vector<std::uint64_t>& words,
                                  std::uint64_t bit_off, unsigned width) {
    const std::uint64_t w = bit_off / 64;
    const unsigned shift = static_cast<unsigned>(bit_off % 64);
    std::uint64_t v = words[w] >> shift;
    if (shift + width > 64) {
        v |= words[w + 1] << (64 - shift);
    }
    return width == 64 ? v : (v & ((1ULL << width) - 1));
}

} // namespace detail

/// Two-dimensional prefix sums over a non-negative integer matrix.
/// M[x][y] holds the sum of the source rectangle [1..x][1..y]; row 0 and
/// column 0 are stored as zeros so the rectangle-sum formula needs no
/// boundary branches.
class SummedAreaTable {
public:
    SummedAreaTable() = default;

    template <std::integral T>
    SummedAreaTable(std::span<const T> cells, std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols) {
        if (cells.size() != rows * cols) {
            throw std::invalid_argument("SummedAreaTable: cell count does not match dimensions");
        }
        m_.assign((rows + 1) * (cols + 1), 0);
        for (std::size_t x = 1; x <= rows; ++x) {
            for (std::size_t y = 1; y <= cols; ++y) {
                const T v = cells[(x - 1) * cols + (y - 1)];
                if constexpr (std::is_signed_v<T>) {
                    if (v < 0) throw std::invalid_argument("SummedAreaTable: negative entry");
                }
                cell(x, y) = static_cast<std::uint64_t>(v) + cell(x - 1, y) + cell(x, y - 1) -
                             cell(x - 1, y - 1);
            }
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    /// M[x][y], 0 <= x <= rows, 0 <= y <= cols.
    std::uint64_t at(std::size_t x, std::size_t y) const {
        if (x > rows_ || y > cols_) throw std::out_of_range("SummedAreaTable::at: index out of range");
        return m_[x * (cols_ + 1) + y];
    }

    /// Sum of the source rectangle with 1-based inclusive corners
    /// [x1,y1]..[x2,y2]; four table reads.
    std::uint64_t count_range(std::size_t x1, std::size_t y1, std::size_t x2, std::size_t y2) const {
        check_corners(x1, y1, x2, y2, rows_, cols_);
        return at(x2, y2) - at(x2, y1 - 1) - at(x1 - 1, y2) + at(x1 - 1, y1 - 1);
    }

    void save(std::ostream& out) const {
        io::write_u32(out, static_cast<std::uint32_t>(rows_));
        io::write_u32(out, static_cast<std::uint32_t>(cols_));
        io::write_u64_vector(out, m_);
    }

    static SummedAreaTable load(std::istream& in) {
        SummedAreaTable t;
        t.rows_ = io::read_u32(in);
        t.cols_ = io::read_u32(in);
        io::read_u64_vector(in, t.m_, (t.rows_ + 1) * (t.cols_ + 1));
        return t;
    }

    std::uint64_t byte_size() const { return 8 + 8 * m_.size(); }

    static void check_corners(std::size_t x1, std::size_t y1, std::size_t x2, std::size_t y2,
                              std::size_t rows, std::size_t cols) {
        if (x1 < 1 || y1 < 1 || x2 > rows || y2 > cols) {
            throw std::out_of_range("count_range: corner out of range");
        }
        if (x1 > x2 || y1 > y2) {
            throw std::invalid_argument("count_range: inverted corners");
        }
    }

private:
    std::uint64_t& cell(std::size_t x, std::size_t y) { return m_[x * (cols_ + 1) + y]; }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint64_t> m_; // (rows+1) x (cols+1), row-major
};

/// Summed area table with only every s-th row kept verbatim. Rows 1, 1+s,
/// 1+2s, ... (and row 0) are stored as full 64-bit rows; each other row
/// stores per-cell differences against the nearest preceding stored row,
/// bit-packed at the smallest uniform width that holds the block's largest
/// difference. Prefix sums are non-decreasing down a column, so every
/// difference is non-negative. A cell read costs at most two lookups.
class DiffSat {
public:
    DiffSat() = default;

    template <std::integral T>
    DiffSat(std::span<const T> cells, std::size_t rows, std::size_t cols, std::size_t sample_period)
        : DiffSat(SummedAreaTable(cells, rows, cols), sample_period) {}

    DiffSat(const SummedAreaTable& plain, std::size_t sample_period)
        : rows_(plain.rows()), cols_(plain.cols()), period_(sample_period) {
        if (sample_period < 1) throw std::invalid_argument("DiffSat: sample period must be >= 1");
        const std::size_t stride = cols_ + 1;
        abs_rows_.assign(num_abs_rows() * stride, 0);
        for (std::size_t x = 1; x <= rows_; x += period_) {
            for (std::size_t y = 0; y <= cols_; ++y) {
                abs_rows_[abs_index(x) * stride + y] = plain.at(x, y);
            }
        }
        block_widths_.assign(num_blocks(), 0);
        block_offsets_.assign(num_blocks(), 0);
        for (std::size_t b = 0; b < num_blocks(); ++b) {
            const std::size_t base_row = b * period_ + 1;
            const std::size_t first = base_row + 1;
            const std::size_t last = std::min(base_row + period_ - 1, rows_);
            std::uint64_t max_diff = 0;
            for (std::size_t x = first; x <= last; ++x) {
                for (std::size_t y = 0; y <= cols_; ++y) {
                    max_diff = std::max(max_diff, plain.at(x, y) - plain.at(base_row, y));
                }
            }
            block_widths_[b] = static_cast<std::uint8_t>(std::bit_width(max_diff));
        }
        rebuild_offsets();
        diff_words_.assign(total_words_, 0);
        for (std::size_t b = 0; b < num_blocks(); ++b) {
            const unsigned w = block_widths_[b];
            if (w == 0) continue;
            const std::size_t base_row = b * period_ + 1;
            const std::size_t first = base_row + 1;
            const std::size_t last = std::min(base_row + period_ - 1, rows_);
            std::uint64_t bit = block_offsets_[b] * 64;
            for (std::size_t x = first; x <= last; ++x) {
                for (std::size_t y = 0; y <= cols_; ++y) {
                    detail::pack_value(diff_words_, bit, plain.at(x, y) - plain.at(base_row, y), w);
                    bit += w;
                }
            }
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t sample_period() const { return period_; }

    std::uint64_t at(std::size_t x, std::size_t y) const {
        if (x > rows_ || y > cols_) throw std::out_of_range("DiffSat::at: index out of range");
        if (x == 0) return 0;
        const std::size_t stride = cols_ + 1;
        if ((x - 1) % period_ == 0) {
            return abs_rows_[abs_index(x) * stride + y];
        }
        const std::size_t b = (x - 1) / period_;
        const std::size_t base_row = b * period_ + 1;
        const std::uint64_t base = abs_rows_[abs_index(base_row) * stride + y];
        const unsigned w = block_widths_[b];
        if (w == 0) return base;
        const std::uint64_t row_in_block = x - base_row - 1;
        const std::uint64_t bit = block_offsets_[b] * 64 + (row_in_block * stride + y) * w;
        return base + detail::unpack_value(diff_words_, bit, w);
    }

    /// Same contract as SummedAreaTable::count_range.
    std::uint64_t count_range(std::size_t x1, std::size_t y1, std::size_t x2, std::size_t y2) const {
        SummedAreaTable::check_corners(x1, y1, x2, y2, rows_, cols_);
        return at(x2, y2) - at(x2, y1 - 1) - at(x1 - 1, y2) + at(x1 - 1, y1 - 1);
    }

    /// Format: dims, sample period, absolute rows verbatim, then one
    /// (bit-width, packed payload) pair per diff block.
    void save(std::ostream& out) const {
        io::write_u32(out, static_cast<std::uint32_t>(rows_));
        io::write_u32(out, static_cast<std::uint32_t>(cols_));
        io::write_u32(out, static_cast<std::uint32_t>(period_));
        io::write_u64_vector(out, abs_rows_);
        for (std::size_t b = 0; b < num_blocks(); ++b) {
            io::write_u8(out, block_widths_[b]);
            const std::size_t nwords = block_word_count(b);
            for (std::size_t i = 0; i < nwords; ++i) {
                io::write_u64(out, diff_words_[block_offsets_[b] + i]);
            }
        }
    }

    static DiffSat load(std::istream& in) {
        DiffSat d;
        d.rows_ = io::read_u32(in);
        d.cols_ = io::read_u32(in);
        d.period_ = io::read_u32(in);
        if (d.period_ < 1) throw std::runtime_error("DiffSat: corrupt sample period");
        io::read_u64_vector(in, d.abs_rows_, d.num_abs_rows() * (d.cols_ + 1));
        d.block_widths_.assign(d.num_blocks(), 0);
        d.block_offsets_.assign(d.num_blocks(), 0);
        d.diff_words_.clear();
        std::uint64_t off = 0;
        for (std::size_t b = 0; b < d.num_blocks(); ++b) {
            d.block_widths_[b] = io::read_u8(in);
            d.block_offsets_[b] = off;
            const std::size_t nwords = d.block_word_count(b);
            d.diff_words_.resize(off + nwords);
            for (std::size_t i = 0; i < nwords; ++i) {
                d.diff_words_[off + i] = io::read_u64(in);
            }
            off += nwords;
        }
        d.total_words_ = off;
        return d;
    }

    std::uint64_t byte_size() const {
        std::uint64_t bytes = 12 + 8 * abs_rows_.size();
        for (std::size_t b = 0; b < num_blocks(); ++b) {
            bytes += 1 + 8 * block_word_count(b);
        }
        return bytes;
    }

private:
    std::size_t num_abs_rows() const {
        // row 0 plus rows 1, 1+s, ... up to rows_
        return rows_ == 0 ? 1 : 1 + (rows_ - 1) / period_ + 1;
    }

    std::size_t abs_index(std::size_t x) const { return x == 0 ? 0 : 1 + (x - 1) / period_; }

    std::size_t num_blocks() const {
        // one block per stored row that is followed by unstored rows
        if (rows_ == 0 || period_ == 1) return 0;
        return (rows_ + period_ - 2) / period_;
    }

    std::size_t block_row_count(std::size_t b) const {
        const std::size_t base_row = b * period_ + 1;
        const std::size_t last = std::min(base_row + period_ - 1, rows_);
        return last - base_row; // rows base_row+1 .. last
    }

    std::size_t block_word_count(std::size_t b) const {
        const std::uint64_t bits =
            static_cast<std::uint64_t>(block_widths_[b]) * block_row_count(b) * (cols_ + 1);
        return static_cast<std::size_t>((bits + 63) / 64);
    }

    void rebuild_offsets() {
        std::uint64_t off = 0;
        for (std::size_t b = 0; b < num_blocks(); ++b) {
            block_offsets_[b] = off;
            off += block_word_count(b);
        }
        total_words_ = off;
    }

    std::size_t rows_ = 0, cols_ = 0, period_ = 1;
    std::vector<std::uint64_t> abs_rows_;      // stored rows, row-major, cols+1 wide
    std::vector<std::uint8_t> block_widths_;   // bits per difference, per block
    std::vector<std::uint64_t> block_offsets_; // word offset of each block's payload
    std::vector<std::uint64_t> diff_words_;    // packed differences, all blocks
    std::uint64_t total_words_ = 0;
};

} // namespace semantrix
