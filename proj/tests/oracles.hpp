#pragma once

// Test-side oracles. Everything here answers by linear scan or double loop
// and never touches the library's directories, indexes or tables.

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace oracle {

inline std::uint64_t rank1(const std::vector<bool>& bits, std::size_t prefix) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < prefix; ++i) c += bits[i];
    return c;
}

// 1-based position of the k-th set bit.
inline std::size_t select1(const std::vector<bool>& bits, std::uint64_t k) {
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] && --k == 0) return i + 1;
    }
    throw std::out_of_range("oracle::select1");
}

inline std::uint64_t substring_count(std::span<const std::uint8_t> text,
                                     std::span<const std::uint8_t> pattern) {
    if (pattern.size() > text.size()) return 0;
    std::uint64_t c = 0;
    for (std::size_t s = 0; s + pattern.size() <= text.size(); ++s) {
        bool hit = true;
        for (std::size_t t = 0; t < pattern.size(); ++t) {
            if (text[s + t] != pattern[t]) { hit = false; break; }
        }
        c += hit;
    }
    return c;
}

inline std::vector<std::uint64_t> substring_locate(std::span<const std::uint8_t> text,
                                                   std::span<const std::uint8_t> pattern) {
    std::vector<std::uint64_t> positions;
    if (pattern.size() > text.size()) return positions;
    for (std::size_t s = 0; s + pattern.size() <= text.size(); ++s) {
        bool hit = true;
        for (std::size_t t = 0; t < pattern.size(); ++t) {
            if (text[s + t] != pattern[t]) { hit = false; break; }
        }
        if (hit) positions.push_back(s + 1);
    }
    return positions;
}

template <class T>
std::uint64_t rect_sum(const std::vector<T>& cells, std::size_t cols, std::size_t x1,
                       std::size_t y1, std::size_t x2, std::size_t y2) {
    std::uint64_t sum = 0;
    for (std::size_t x = x1; x <= x2; ++x) {
        for (std::size_t y = y1; y <= y2; ++y) {
            sum += static_cast<std::uint64_t>(cells[(x - 1) * cols + (y - 1)]);
        }
    }
    return sum;
}

inline std::vector<std::uint8_t> run_ids(std::span<const std::uint8_t> row) {
    std::vector<std::uint8_t> ids;
    for (std::uint8_t a : row) {
        if (ids.empty() || ids.back() != a) ids.push_back(a);
    }
    return ids;
}

// Run-level pattern count over a row-major matrix.
inline std::uint64_t pattern_count(const std::vector<std::uint8_t>& cells, std::size_t rows,
                                   std::size_t cols, std::span<const std::uint8_t> pattern) {
    std::uint64_t count = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        const auto ids = run_ids({cells.data() + r * cols, cols});
        if (ids.size() < pattern.size()) continue;
        for (std::size_t s = 0; s + pattern.size() <= ids.size(); ++s) {
            bool hit = true;
            for (std::size_t t = 0; t < pattern.size(); ++t) {
                if (ids[s + t] != pattern[t]) { hit = false; break; }
            }
            count += hit;
        }
    }
    return count;
}

} // namespace oracle
