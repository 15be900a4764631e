#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "semantrix/bitvector.hpp"
#include "semantrix/io.hpp"

namespace semantrix {

using Symbol = std::uint8_t;

/// Self-index over a small-alphabet symbol sequence (symbols 1..sigma').
/// Built from the Burrows-Wheeler transform of the sequence plus a sentinel
/// that sorts below every symbol. count/locate run backward search; because
/// the alphabet is tiny, per-symbol occurrence counts are answered by one
/// rank-directory bitvector per symbol instead of a wavelet tree. Matches
/// are plain substring occurrences and may overlap.
///
/// A pattern symbol outside [1..alphabet] is a caller bug and throws; a
/// symbol inside the alphabet that simply never occurs counts zero.
class FmIndex {
public:
    static constexpr unsigned kDefaultSampleRate = 32;

    FmIndex() = default;

    /// alphabet == 0 takes the largest symbol of the sequence as sigma'.
    explicit FmIndex(std::span<const Symbol> seq, unsigned sample_rate = kDefaultSampleRate,
                     Symbol alphabet = 0) {
        if (seq.empty()) throw std::invalid_argument("FmIndex: empty sequence");
        if (sample_rate == 0) throw std::invalid_argument("FmIndex: sample rate must be positive");
        for (Symbol s : seq) {
            if (s == 0) throw std::invalid_argument("FmIndex: symbol 0 is reserved");
            if (alphabet != 0 && s > alphabet) {
                throw std::invalid_argument("FmIndex: sequence symbol outside alphabet");
            }
        }
        n_ = seq.size();
        sample_rate_ = sample_rate;
        alphabet_ = alphabet;

        std::vector<Symbol> text(seq.begin(), seq.end());
        text.push_back(0); // sentinel, strictly smaller than all symbols
        const std::vector<std::uint32_t> sa = build_suffix_array(text);

        bwt_.resize(text.size());
        std::vector<bool> sampled(text.size(), false);
        for (std::size_t i = 0; i < text.size(); ++i) {
            bwt_[i] = text[(sa[i] + text.size() - 1) % text.size()];
            if (sa[i] % sample_rate_ == 0) {
                sampled[i] = true;
                samples_.push_back(sa[i]);
            }
        }
        sampled_rows_ = BitVector(sampled);
        build_occ();
    }

    std::uint64_t size() const { return n_; }
    unsigned sample_rate() const { return sample_rate_; }
    Symbol alphabet() const { return alphabet_; }

    /// Number of substring occurrences of the pattern.
    std::uint64_t count(std::span<const Symbol> pattern) const {
        std::uint64_t sp = 0, ep = 0;
        return backward_search(pattern, sp, ep) ? ep - sp : 0;
    }

    /// Sorted 1-based start positions of every occurrence.
    std::vector<std::uint64_t> locate(std::span<const Symbol> pattern) const {
        std::uint64_t sp = 0, ep = 0;
        std::vector<std::uint64_t> positions;
        if (!backward_search(pattern, sp, ep)) return positions;
        positions.reserve(ep - sp);
        for (std::uint64_t row = sp; row < ep; ++row) {
            std::uint64_t j = row, dist = 0;
            while (!sampled_rows_.access(j + 1)) {
                j = lf(j);
                ++dist;
            }
            positions.push_back(samples_[sampled_rows_.rank1(j + 1) - 1] + dist + 1);
        }
        std::sort(positions.begin(), positions.end());
        return positions;
    }

    /// Recovers the indexed sequence by walking the LF-mapping from the
    /// sentinel row; also the verification hook for the BWT round trip.
    std::vector<Symbol> reconstruct() const {
        std::vector<Symbol> seq(n_);
        std::uint64_t row = 0; // sentinel suffix sorts first
        for (std::uint64_t i = 0; i < n_; ++i) {
            seq[n_ - 1 - i] = bwt_[row];
            row = lf(row);
        }
        return seq;
    }

    /// Format: sequence length, sample rate, alphabet size, raw BWT bytes,
    /// sampled suffix array values; C array, rank directories and the
    /// sampled-row marks are rebuilt on load (the marks by one LF walk over
    /// the whole index).
    void save(std::ostream& out) const {
        io::write_u64(out, n_);
        io::write_u32(out, sample_rate_);
        io::write_u8(out, alphabet_);
        io::write_bytes(out, bwt_.data(), bwt_.size());
        for (std::uint64_t s : samples_) io::write_u64(out, s);
    }

    static FmIndex load(std::istream& in) {
        FmIndex idx;
        idx.n_ = io::read_u64(in);
        idx.sample_rate_ = io::read_u32(in);
        idx.alphabet_ = io::read_u8(in);
        if (idx.n_ == 0 || idx.sample_rate_ == 0) {
            throw std::runtime_error("FmIndex: corrupt header");
        }
        idx.bwt_.resize(idx.n_ + 1);
        io::read_bytes(in, idx.bwt_.data(), idx.bwt_.size());
        idx.build_occ();

        // Recover each row's suffix-array value to find the sampled rows.
        std::vector<bool> sampled(idx.bwt_.size(), false);
        std::uint64_t row = 0, pos = idx.n_;
        std::uint64_t expected = 0;
        for (std::uint64_t i = 0; i < idx.bwt_.size(); ++i) {
            if (pos % idx.sample_rate_ == 0) {
                sampled[row] = true;
                ++expected;
            }
            row = idx.lf(row);
            --pos;
        }
        idx.sampled_rows_ = BitVector(sampled);
        idx.samples_.resize(expected);
        for (std::uint64_t i = 0; i < expected; ++i) idx.samples_[i] = io::read_u64(in);
        return idx;
    }

    std::uint64_t byte_size() const { return 8 + 4 + 1 + bwt_.size() + 8 * samples_.size(); }

private:
    // Prefix-doubling suffix sort; the sentinel makes all suffixes distinct.
    static std::vector<std::uint32_t> build_suffix_array(const std::vector<Symbol>& text) {
        const std::size_t n = text.size();
        std::vector<std::uint32_t> sa(n), rank(n), next(n);
        std::iota(sa.begin(), sa.end(), 0);
        for (std::size_t i = 0; i < n; ++i) rank[i] = text[i];
        for (std::size_t k = 1;; k *= 2) {
            auto key = [&](std::uint32_t i) {
                return std::pair<std::uint32_t, std::uint32_t>(
                    rank[i], i + k < n ? rank[i + k] + 1 : 0);
            };
            std::sort(sa.begin(), sa.end(),
                      [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
            next[sa[0]] = 0;
            for (std::size_t i = 1; i < n; ++i) {
                next[sa[i]] = next[sa[i - 1]] + (key(sa[i - 1]) < key(sa[i]) ? 1 : 0);
            }
            rank.swap(next);
            if (rank[sa[n - 1]] == n - 1) break;
        }
        return sa;
    }

    void build_occ() {
        const Symbol max_present = *std::max_element(bwt_.begin(), bwt_.end());
        if (alphabet_ == 0) alphabet_ = max_present;
        if (max_present > alphabet_) {
            throw std::runtime_error("FmIndex: BWT symbol outside declared alphabet");
        }
        std::vector<std::uint64_t> counts(max_present + 1, 0);
        for (Symbol s : bwt_) ++counts[s];
        c_.assign(static_cast<std::size_t>(alphabet_) + 2, 0);
        for (std::size_t s = 0; s <= alphabet_; ++s) {
            c_[s + 1] = c_[s] + (s <= max_present ? counts[s] : 0);
        }

        occ_.clear();
        occ_.reserve(max_present + 1);
        std::vector<bool> marks(bwt_.size());
        for (std::size_t s = 0; s <= max_present; ++s) {
            for (std::size_t i = 0; i < bwt_.size(); ++i) marks[i] = bwt_[i] == s;
            occ_.emplace_back(marks);
        }
    }

    // Occurrences of symbol s among the first `rows` BWT entries. Symbols in
    // the alphabet but absent from the sequence have no directory at all.
    std::uint64_t occ(Symbol s, std::uint64_t rows) const {
        return s < occ_.size() ? occ_[s].rank1(rows) : 0;
    }

    std::uint64_t lf(std::uint64_t row) const {
        const Symbol s = bwt_[row];
        return c_[s] + occ(s, row);
    }

    bool backward_search(std::span<const Symbol> pattern, std::uint64_t& sp,
                         std::uint64_t& ep) const {
        if (pattern.empty()) throw std::invalid_argument("FmIndex: empty pattern");
        for (Symbol s : pattern) {
            if (s == 0 || s > alphabet_) {
                throw std::invalid_argument("FmIndex: pattern symbol outside alphabet");
            }
        }
        sp = 0;
        ep = bwt_.size();
        for (auto it = pattern.rbegin(); it != pattern.rend(); ++it) {
            sp = c_[*it] + occ(*it, sp);
            ep = c_[*it] + occ(*it, ep);
            if (sp >= ep) return false;
        }
        return true;
    }

    std::uint64_t n_ = 0;                 // indexed sequence length, sentinel excluded
    unsigned sample_rate_ = kDefaultSampleRate;
    Symbol alphabet_ = 0;                 // sigma'
    std::vector<Symbol> bwt_;             // n_+1 entries, includes the sentinel
    std::vector<std::uint64_t> c_;        // c_[s] = symbols strictly smaller than s
    std::vector<BitVector> occ_;          // one rank directory per symbol 0..max
    BitVector sampled_rows_;
    std::vector<std::uint64_t> samples_;  // suffix-array values of sampled rows, row order
};

} // namespace semantrix
