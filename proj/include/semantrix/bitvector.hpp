#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "semantrix/io.hpp"

namespace semantrix {

/// Plain bitvector with a two-level rank directory (superblocks of 512 bits
/// holding absolute counts, blocks of 64 bits holding counts relative to
/// their superblock). Positions are 1-based: rank1(i) counts the ones in
/// positions 1..i and select1(k) returns the position of the k-th one.
/// Immutable once built; any number of threads may read concurrently.
class BitVector {
public:
    BitVector() = default;

    explicit BitVector(const std::vector<bool>& bits) : n_(bits.size()) {
        words_.assign((n_ + 63) / 64, 0);
        for (std::uint64_t i = 0; i < n_; ++i) {
            if (bits[i]) words_[i / 64] |= 1ULL << (i % 64);
        }
        build_directory();
    }

    BitVector(std::vector<std::uint64_t> words, std::uint64_t n)
        : words_(std::move(words)), n_(n) {
        if (words_.size() != (n_ + 63) / 64) {
            throw std::invalid_argument("BitVector: word count does not match length");
        }
        clear_trailing_bits();
        build_directory();
    }

    std::uint64_t size() const { return n_; }
    std::uint64_t ones() const { return total_ones_; }

    /// Number of ones in positions 1..i. rank1(0) = 0.
    std::uint64_t rank1(std::uint64_t i) const {
        if (i > n_) throw std::out_of_range("BitVector::rank1: position past end");
        if (i == 0) return 0;
        const std::uint64_t w = i / 64;
        const std::uint64_t rem = i % 64;
        std::uint64_t r = super_ranks_[w / kBlocksPerSuper] + block_ranks_[w];
        if (rem != 0) r += std::popcount(words_[w] & ((1ULL << rem) - 1));
        return r;
    }

    std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }

    /// Position (1-based) of the k-th one, 1 <= k <= ones().
    std::uint64_t select1(std::uint64_t k) const {
        if (k == 0 || k > total_ones_) {
            throw std::out_of_range("BitVector::select1: rank out of range");
        }
        // Superblock holding the k-th one, then block within it, then word scan.
        std::uint64_t lo = 0, hi = super_ranks_.size() - 1;
        while (lo < hi) {
            std::uint64_t mid = (lo + hi + 1) / 2;
            if (super_ranks_[mid] < k) lo = mid; else hi = mid - 1;
        }
        std::uint64_t remaining = k - super_ranks_[lo];
        std::uint64_t w = lo * kBlocksPerSuper;
        const std::uint64_t w_end = std::min<std::uint64_t>(words_.size(), (lo + 1) * kBlocksPerSuper);
        while (w + 1 < w_end && block_ranks_[w + 1] < remaining) ++w;
        remaining -= block_ranks_[w];
        return w * 64 + select_in_word(words_[w], remaining) + 1;
    }

    /// Bit at 1-based position i.
    bool access(std::uint64_t i) const {
        if (i == 0 || i > n_) throw std::out_of_range("BitVector::access: position out of range");
        return (words_[(i - 1) / 64] >> ((i - 1) % 64)) & 1;
    }

    /// Serialized as length (u64 LE) followed by the raw bit words;
    /// the rank directory is rebuilt on load.
    void save(std::ostream& out) const {
        io::write_u64(out, n_);
        io::write_u64_vector(out, words_);
    }

    static BitVector load(std::istream& in) {
        BitVector bv;
        bv.n_ = io::read_u64(in);
        io::read_u64_vector(in, bv.words_, (bv.n_ + 63) / 64);
        bv.build_directory();
        return bv;
    }

    std::uint64_t byte_size() const { return 8 + 8 * words_.size(); }

private:
    static constexpr std::uint64_t kBlocksPerSuper = 8; // 512-bit superblocks

    void clear_trailing_bits() {
        if (n_ % 64 != 0 && !words_.empty()) {
            words_.back() &= (1ULL << (n_ % 64)) - 1;
        }
    }

    void build_directory() {
        const std::uint64_t nwords = words_.size();
        const std::uint64_t nsuper = nwords / kBlocksPerSuper + 1;
        super_ranks_.assign(nsuper, 0);
        block_ranks_.assign(nwords + 1, 0);
        std::uint64_t total = 0;
        std::uint16_t in_super = 0;
        for (std::uint64_t w = 0; w < nwords; ++w) {
            if (w % kBlocksPerSuper == 0) {
                super_ranks_[w / kBlocksPerSuper] = total;
                in_super = 0;
            }
            block_ranks_[w] = in_super;
            const int pc = std::popcount(words_[w]);
            in_super = static_cast<std::uint16_t>(in_super + pc);
            total += static_cast<std::uint64_t>(pc);
        }
        if (nwords % kBlocksPerSuper == 0 && nwords / kBlocksPerSuper < nsuper) {
            super_ranks_[nwords / kBlocksPerSuper] = total;
        }
        // Word index nwords opens a fresh superblock when aligned.
        block_ranks_[nwords] = (nwords % kBlocksPerSuper == 0) ? 0 : in_super;
        total_ones_ = total;
    }

    // Position (0-based) of the k-th set bit within a word, 1 <= k <= popcount.
    static unsigned select_in_word(std::uint64_t word, std::uint64_t k) {
        unsigned base = 0;
        for (int byte = 0; byte < 8; ++byte) {
            const unsigned cnt = std::popcount(word & 0xffULL);
            if (k <= cnt) break;
            k -= cnt;
            word >>= 8;
            base += 8;
        }
        for (unsigned bit = 0; bit < 8; ++bit) {
            if (word & (1ULL << bit)) {
                if (--k == 0) return base + bit;
            }
        }
        throw std::logic_error("BitVector::select_in_word: bit not found");
    }

    std::vector<std::uint64_t> words_;
    std::uint64_t n_ = 0;
    std::uint64_t total_ones_ = 0;
    std::vector<std::uint64_t> super_ranks_; // absolute ones before each superblock
    std::vector<std::uint16_t> block_ranks_; // ones before each word, within its superblock
};

} // namespace semantrix
