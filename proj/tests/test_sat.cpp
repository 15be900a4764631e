#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "semantrix/sat.hpp"
#include "oracles.hpp"

using semantrix::DiffSat;
using semantrix::SummedAreaTable;

namespace {

template <class T>
SummedAreaTable make_sat(const std::vector<T>& cells, std::size_t rows, std::size_t cols) {
    return SummedAreaTable(std::span<const T>(cells), rows, cols);
}

std::vector<std::uint8_t> random_binary(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> v(n);
    for (auto& x : v) x = rng() & 1;
    return v;
}

} // namespace

TEST_SUITE("sat") {
    TEST_CASE("empty matrix") {
        SummedAreaTable t = make_sat(std::vector<std::int64_t>{}, 0, 0);
        CHECK(t.at(0, 0) == 0);
        CHECK_THROWS_AS(t.count_range(1, 1, 1, 1), std::out_of_range);
    }

    TEST_CASE("2x2 worked example") {
        SummedAreaTable t = make_sat(std::vector<std::int64_t>{1, 2, 3, 4}, 2, 2);
        CHECK(t.at(2, 2) == 10);
        CHECK(t.at(1, 1) == 1);
        CHECK(t.count_range(1, 1, 2, 2) == 10);
        CHECK(t.count_range(2, 2, 2, 2) == 4); // single cell
        CHECK(t.count_range(1, 2, 2, 2) == 6);
    }

    TEST_CASE("all zero") {
        SummedAreaTable t = make_sat(std::vector<std::int64_t>(12, 0), 3, 4);
        for (std::size_t x = 0; x <= 3; ++x) {
            for (std::size_t y = 0; y <= 4; ++y) CHECK(t.at(x, y) == 0);
        }
    }

    TEST_CASE("zero row and column") {
        SummedAreaTable t = make_sat(std::vector<std::int64_t>{5, 6, 7, 8}, 2, 2);
        for (std::size_t x = 0; x <= 2; ++x) CHECK(t.at(x, 0) == 0);
        for (std::size_t y = 0; y <= 2; ++y) CHECK(t.at(0, y) == 0);
    }

    TEST_CASE("negative entry rejected") {
        CHECK_THROWS_AS(make_sat(std::vector<std::int64_t>{1, -1}, 1, 2), std::invalid_argument);
    }

    TEST_CASE("corner validation") {
        SummedAreaTable t = make_sat(std::vector<std::int64_t>{1, 2, 3, 4}, 2, 2);
        CHECK_THROWS_AS(t.count_range(2, 1, 1, 2), std::invalid_argument); // inverted
        CHECK_THROWS_AS(t.count_range(1, 2, 2, 1), std::invalid_argument);
        CHECK_THROWS_AS(t.count_range(0, 1, 2, 2), std::out_of_range);
        CHECK_THROWS_AS(t.count_range(1, 1, 3, 2), std::out_of_range);
    }

    TEST_CASE("random rectangles vs brute force") {
        // Binary entries as in the aggregation use, plus a small dense case.
        const std::size_t rows = 50, cols = 2000;
        const auto cells = random_binary(rows * cols, 99);
        SummedAreaTable t = make_sat(cells, rows, cols);
        std::mt19937_64 rng(100);
        for (int q = 0; q < 1000; ++q) {
            std::size_t x1 = rng() % rows + 1, x2 = rng() % rows + 1;
            std::size_t y1 = rng() % cols + 1, y2 = rng() % cols + 1;
            if (x1 > x2) std::swap(x1, x2);
            if (y1 > y2) std::swap(y1, y2);
            REQUIRE(t.count_range(x1, y1, x2, y2) ==
                    oracle::rect_sum(cells, cols, x1, y1, x2, y2));
        }

        std::vector<std::int64_t> dense(7 * 9);
        for (auto& v : dense) v = static_cast<std::int64_t>(rng() % 100);
        SummedAreaTable d = make_sat(dense, 7, 9);
        for (std::size_t x1 = 1; x1 <= 7; ++x1)
            for (std::size_t x2 = x1; x2 <= 7; ++x2)
                for (std::size_t y1 = 1; y1 <= 9; ++y1)
                    for (std::size_t y2 = y1; y2 <= 9; ++y2)
                        REQUIRE(d.count_range(x1, y1, x2, y2) ==
                                oracle::rect_sum(dense, 9, x1, y1, x2, y2));
    }

    TEST_CASE("split consistency") {
        const auto cells = random_binary(30 * 400, 5);
        SummedAreaTable t = make_sat(cells, 30, 400);
        std::mt19937_64 rng(6);
        for (int q = 0; q < 500; ++q) {
            std::size_t x1 = rng() % 30 + 1, x2 = rng() % 30 + 1;
            std::size_t y1 = rng() % 400 + 1, y2 = rng() % 400 + 1;
            if (x1 > x2) std::swap(x1, x2);
            if (y1 > y2) std::swap(y1, y2);
            const auto whole = t.count_range(x1, y1, x2, y2);
            if (x1 < x2) {
                const std::size_t mid = x1 + rng() % (x2 - x1);
                REQUIRE(whole == t.count_range(x1, y1, mid, y2) +
                                     t.count_range(mid + 1, y1, x2, y2));
            }
            if (y1 < y2) {
                const std::size_t mid = y1 + rng() % (y2 - y1);
                REQUIRE(whole == t.count_range(x1, y1, x2, mid) +
                                     t.count_range(x1, mid + 1, x2, y2));
            }
        }
    }

    TEST_CASE("sat save/load") {
        const auto cells = random_binary(20 * 100, 8);
        SummedAreaTable t = make_sat(cells, 20, 100);
        std::stringstream ss;
        t.save(ss);
        const SummedAreaTable loaded = SummedAreaTable::load(ss);
        for (std::size_t x = 0; x <= 20; ++x)
            for (std::size_t y = 0; y <= 100; ++y) REQUIRE(loaded.at(x, y) == t.at(x, y));
    }
}

TEST_SUITE("diff sat") {
    TEST_CASE("degenerate period equals plain") {
        const auto cells = random_binary(10 * 50, 12);
        SummedAreaTable plain = make_sat(cells, 10, 50);
        DiffSat diff(plain, 1);
        for (std::size_t x = 0; x <= 10; ++x)
            for (std::size_t y = 0; y <= 50; ++y) REQUIRE(diff.at(x, y) == plain.at(x, y));
    }

    TEST_CASE("three ones rows, period 2") {
        // Rows 1 and 3 stored, row 2 as differences [1, 2] against row 1.
        const std::vector<std::int64_t> cells{1, 1, 1, 1, 1, 1};
        DiffSat d(std::span<const std::int64_t>(cells), 3, 2, 2);
        CHECK(d.at(2, 1) - d.at(1, 1) == 1);
        CHECK(d.at(2, 2) - d.at(1, 2) == 2);
        SummedAreaTable plain = make_sat(cells, 3, 2);
        for (std::size_t x = 0; x <= 3; ++x)
            for (std::size_t y = 0; y <= 2; ++y) REQUIRE(d.at(x, y) == plain.at(x, y));
    }

    TEST_CASE("period 4 on a random 20x100 matrix, every cell") {
        const auto cells = random_binary(20 * 100, 77);
        SummedAreaTable plain = make_sat(cells, 20, 100);
        DiffSat diff(plain, 4);
        for (std::size_t x = 0; x <= 20; ++x)
            for (std::size_t y = 0; y <= 100; ++y) REQUIRE(diff.at(x, y) == plain.at(x, y));
    }

    TEST_CASE("count_range_diff equals count_range for every tested period") {
        const std::size_t rows = 50, cols = 1000;
        const auto cells = random_binary(rows * cols, 13);
        SummedAreaTable plain = make_sat(cells, rows, cols);
        for (std::size_t s : {1u, 2u, 4u, 8u}) {
            DiffSat diff(plain, s);
            std::mt19937_64 rng(1000 + s);
            for (int q = 0; q < 2500; ++q) {
                std::size_t x1 = rng() % rows + 1, x2 = rng() % rows + 1;
                std::size_t y1 = rng() % cols + 1, y2 = rng() % cols + 1;
                if (x1 > x2) std::swap(x1, x2);
                if (y1 > y2) std::swap(y1, y2);
                REQUIRE(diff.count_range(x1, y1, x2, y2) == plain.count_range(x1, y1, x2, y2));
            }
        }
    }

    TEST_CASE("sampled-row corners") {
        const auto cells = random_binary(20 * 64, 21);
        SummedAreaTable plain = make_sat(cells, 20, 64);
        DiffSat diff(plain, 4);
        // rows 1, 5, 9, 13, 17 are stored verbatim
        CHECK(diff.count_range(1, 2, 5, 30) == plain.count_range(1, 2, 5, 30));
        CHECK(diff.count_range(5, 1, 17, 64) == plain.count_range(5, 1, 17, 64));
        CHECK(diff.count_range(9, 10, 13, 20) == plain.count_range(9, 10, 13, 20));
    }

    TEST_CASE("rejects bad period") {
        const std::vector<std::int64_t> cells{1, 2};
        CHECK_THROWS_AS(DiffSat(std::span<const std::int64_t>(cells), 1, 2, 0),
                        std::invalid_argument);
    }

    TEST_CASE("diff save/load") {
        const auto cells = random_binary(23 * 130, 44);
        DiffSat d(std::span<const std::uint8_t>(cells), 23, 130, 4);
        std::stringstream ss;
        d.save(ss);
        const DiffSat loaded = DiffSat::load(ss);
        CHECK(loaded.byte_size() == d.byte_size());
        for (std::size_t x = 0; x <= 23; ++x)
            for (std::size_t y = 0; y <= 130; ++y) REQUIRE(loaded.at(x, y) == d.at(x, y));
    }

    TEST_CASE("period 4 is smaller than plain on a typical indicator matrix") {
        const auto cells = random_binary(20 * 2688, 31);
        SummedAreaTable plain = make_sat(cells, 20, 2688);
        DiffSat diff(plain, 4);
        CHECK(diff.byte_size() < plain.byte_size());
    }
}
