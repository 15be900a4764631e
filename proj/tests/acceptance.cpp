// Acceptance suite: one check per shipped guarantee, one PASS/FAIL line
// each. Exit code is the number of failed checks.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "semantrix/baselines.hpp"
#include "semantrix/bench.hpp"
#include "semantrix/container.hpp"
#include "semantrix/sat.hpp"
#include "semantrix/semantrix.hpp"
#include "semantrix/synth.hpp"

using namespace semantrix;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void report(int number, const std::string& name, bool ok, double elapsed_ms) {
    std::printf("[%s] %2d. %s (%.1f ms)\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                elapsed_ms);
    std::fflush(stdout);
    if (!ok) ++failures;
}

void run(int number, const std::string& name, const std::function<bool()>& body) {
    const auto t0 = Clock::now();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::printf("       exception: %s\n", e.what());
        ok = false;
    }
    report(number, name, ok, ms_since(t0));
}

ActivityMatrix month_dataset() {
    GeneratorConfig cfg;
    cfg.num_objects = 20;
    cfg.intervals = kMonthIntervals; // 2688
    cfg.seed = 42;
    return generate(cfg);
}

ActivityMatrix year_dataset() {
    GeneratorConfig cfg;
    cfg.num_objects = 20;
    cfg.intervals = kYearIntervals; // 32256
    cfg.seed = 42;
    return generate(cfg);
}

// 1. The classic prefix-sum worked example: a matrix whose table holds
//    M[7][4]=64, M[7][1]=19, M[2][4]=18, M[2][1]=6, so the rectangle
//    [3,2]..[7,4] sums to 64-19-18+6 = 33. Must answer in under 1 ms.
bool sat_worked_example() {
    const std::vector<std::int64_t> a{
        3, 2, 2, 2,
        3, 2, 2, 2,
        3, 3, 2, 2,
        3, 2, 2, 2,
        3, 2, 2, 2,
        2, 2, 2, 3,
        2, 3, 2, 2,
    };
    SummedAreaTable t(std::span<const std::int64_t>(a), 7, 4);
    bool ok = t.at(7, 4) == 64 && t.at(7, 1) == 19 && t.at(2, 4) == 18 && t.at(2, 1) == 6;
    const auto t0 = Clock::now();
    const std::uint64_t sum = t.count_range(3, 2, 7, 4);
    const double query_ms = ms_since(t0);
    ok = ok && sum == 33 && query_ms < 1.0;
    if (!ok) std::printf("       got %llu in %.4f ms\n", (unsigned long long)sum, query_ms);
    return ok;
}

// 2. 10,000 seeded random aggregate rectangles on the month dataset give
//    identical counts from all four structures, within 60 s.
bool aggregate_equivalence(const ActivityMatrix& m, const NaiveWarehouse& naive,
                           const BaselinePlus& bp, const Semantrix& plain,
                           const Semantrix& diff) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2);
    for (int q = 0; q < 10000; ++q) {
        const auto a = static_cast<std::uint8_t>(rng() % 9 + 1);
        std::uint32_t j1 = rng() % m.objects() + 1, j2 = rng() % m.objects() + 1;
        std::uint32_t i1 = rng() % m.intervals() + 1, i2 = rng() % m.intervals() + 1;
        if (j1 > j2) std::swap(j1, j2);
        if (i1 > i2) std::swap(i1, i2);
        const std::uint64_t expect = naive.aggregate_count(a, j1, j2, i1, i2);
        if (bp.aggregate_count(a, j1, j2, i1, i2) != expect ||
            plain.aggregate_count(a, j1, j2, i1, i2) != expect ||
            diff.aggregate_count(a, j1, j2, i1, i2) != expect) {
            std::printf("       mismatch at a=%d [%u,%u]x[%u,%u]\n", a, j1, j2, i1, i2);
            return false;
        }
    }
    return ms_since(t0) < 60000.0;
}

// 3. Every singleton and ordered pair over the nine activities counts the
//    same in the naive scan, baseline+ and semantrix, within 60 s.
bool pattern_equivalence(const NaiveWarehouse& naive, const BaselinePlus& bp,
                         const Semantrix& plain) {
    const auto t0 = Clock::now();
    std::vector<std::uint8_t> p;
    for (std::uint8_t a = 1; a <= 9; ++a) {
        p = {a};
        const auto expect = naive.pattern_count(p);
        if (bp.pattern_count(p) != expect || plain.pattern_count(p) != expect) return false;
        for (std::uint8_t b = 1; b <= 9; ++b) {
            p = {a, b};
            const auto expect2 = naive.pattern_count(p);
            if (bp.pattern_count(p) != expect2 || plain.pattern_count(p) != expect2) {
                std::printf("       mismatch at pattern [%d,%d]\n", a, b);
                return false;
            }
        }
    }
    return ms_since(t0) < 60000.0;
}

// 4. 1,000 random cell probes agree with the source matrix on all four
//    structures.
bool individual_round_trip(const ActivityMatrix& m, const NaiveWarehouse& naive,
                           const BaselinePlus& bp, const Semantrix& plain,
                           const Semantrix& diff) {
    std::mt19937_64 rng(4);
    for (int q = 0; q < 1000; ++q) {
        const std::uint32_t obj = rng() % m.objects() + 1;
        const std::uint32_t ivl = rng() % m.intervals() + 1;
        const std::uint8_t expect = m.at(obj, ivl);
        if (naive.activity_at(obj, ivl) != expect || bp.activity_at(obj, ivl) != expect ||
            plain.activity_at(obj, ivl) != expect || diff.activity_at(obj, ivl) != expect) {
            return false;
        }
    }
    return true;
}

// 5. Reported bytes: the naive matrix is smaller than every warehouse
//    structure, and the diff variant undercuts plain semantrix.
bool space_ordering(const NaiveWarehouse& naive, const BaselinePlus& bp, const Semantrix& plain,
                    const Semantrix& diff) {
    const auto nb = naive.byte_size();
    const auto ok = nb < bp.byte_size() && nb < plain.byte_size() && nb < diff.byte_size() &&
                    diff.byte_size() < plain.byte_size();
    if (!ok) {
        std::printf("       naive=%llu baseline+=%llu plain=%llu diff=%llu\n",
                    (unsigned long long)nb, (unsigned long long)bp.byte_size(),
                    (unsigned long long)plain.byte_size(), (unsigned long long)diff.byte_size());
    }
    return ok;
}

// 6. On the year dataset, growing the aggregate rectangle from area 10 to
//    area 10,000 slows semantrix by less than 3x while the naive scan
//    slows by more than 10x; the whole check stays under 5 minutes.
bool aggregate_scaling() {
    const auto t0 = Clock::now();
    const auto m = year_dataset();
    BenchConfig small_cfg, large_cfg;
    small_cfg.structures = {StructureTag::Naive, StructureTag::SemantrixPlain};
    small_cfg.queries_per_type = 10000;
    small_cfg.query_seed = 6;
    small_cfg.query_types = {"aggregate"};
    large_cfg = small_cfg;
    small_cfg.agg_objects = 1;
    small_cfg.agg_intervals = 10; // area 10
    large_cfg.agg_objects = 10;
    large_cfg.agg_intervals = 1000; // area 10,000

    auto mean_of = [](const std::vector<BenchRow>& rows, const std::string& structure) {
        for (const auto& r : rows) {
            if (r.structure == structure && r.query_type == "aggregate") return r.mean_us;
        }
        return -1.0;
    };
    const auto small_rows = run_bench(m, small_cfg);
    const auto large_rows = run_bench(m, large_cfg);
    const double naive_small = mean_of(small_rows, "naive");
    const double naive_large = mean_of(large_rows, "naive");
    const double sx_small = mean_of(small_rows, "semantrix-plain");
    const double sx_large = mean_of(large_rows, "semantrix-plain");
    const double naive_ratio = naive_large / naive_small;
    const double sx_ratio = sx_large / sx_small;
    std::printf("       naive %.3f -> %.3f us (x%.1f), semantrix %.3f -> %.3f us (x%.2f)\n",
                naive_small, naive_large, naive_ratio, sx_small, sx_large, sx_ratio);
    return naive_small > 0 && sx_small > 0 && sx_ratio < 3.0 && naive_ratio > 10.0 &&
           ms_since(t0) < 300000.0;
}

// 7. count/locate against a scan oracle: 100 random sequences over ten
//    symbols, every pattern of length <= 3, within 2 minutes.
bool fm_property_suite() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(7);
    for (int round = 0; round < 100; ++round) {
        const std::size_t n = 1 + rng() % 10000;
        std::vector<Symbol> seq(n);
        for (auto& s : seq) s = static_cast<Symbol>(rng() % 10 + 1);
        FmIndex idx(seq, 32, 10);

        // Every occurrence of every short pattern, gathered in one pass.
        std::map<std::uint32_t, std::vector<std::uint64_t>> occurrences;
        auto key = [](std::span<const Symbol> p) {
            std::uint32_t k = 0;
            for (Symbol s : p) k = k * 11 + s;
            return k;
        };
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t len = 1; len <= 3 && i + len <= n; ++len) {
                occurrences[key(std::span<const Symbol>(seq).subspan(i, len))].push_back(i + 1);
            }
        }

        std::vector<Symbol> p;
        for (Symbol a = 1; a <= 10; ++a) {
            for (Symbol b = 0; b <= 10; ++b) {
                for (Symbol c = 0; c <= 10; ++c) {
                    if (b == 0 && c != 0) continue;
                    p = {a};
                    if (b != 0) p.push_back(b);
                    if (c != 0) p.push_back(c);
                    const auto it = occurrences.find(key(p));
                    const std::vector<std::uint64_t> empty;
                    const auto& expect = it == occurrences.end() ? empty : it->second;
                    if (idx.count(p) != expect.size() || idx.locate(p) != expect) {
                        std::printf("       mismatch in round %d, pattern length %zu\n", round,
                                    p.size());
                        return false;
                    }
                }
            }
        }
    }
    return ms_since(t0) < 120000.0;
}

// 8. rank1(select1(i)) == i for every valid i and full agreement with a
//    scan oracle, on random bitvectors up to a million bits.
bool rank_select_identities() {
    std::mt19937_64 rng(8);
    for (const std::size_t n : {1u, 64u, 65u, 511u, 513u, 100000u, 1000000u}) {
        std::vector<bool> bits(n);
        for (std::size_t i = 0; i < n; ++i) bits[i] = (rng() & 7) == 0 || (rng() & 1);
        BitVector bv(bits);

        std::uint64_t ones = 0;
        std::vector<std::uint64_t> prefix(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            ones += bits[i];
            prefix[i + 1] = ones;
        }
        if (bv.ones() != ones) return false;
        for (std::uint64_t k = 1; k <= ones; ++k) {
            if (bv.rank1(bv.select1(k)) != k) return false;
        }
        for (int q = 0; q < 10000; ++q) {
            const std::uint64_t i = rng() % (n + 1);
            if (bv.rank1(i) != prefix[i]) return false;
            if (i >= 1 && !bits[i - 1] !=
                              !(bv.rank1(i) - bv.rank1(i - 1))) {
                return false;
            }
        }
    }
    return true;
}

// 9. The diff tables answer exactly like the plain tables for 10,000
//    random rectangles at every tested sample period.
bool diff_equivalence() {
    std::mt19937_64 rng(9);
    const std::size_t rows = 50, cols = 5000;
    std::vector<std::uint8_t> cells(rows * cols);
    for (auto& c : cells) c = rng() & 1;
    SummedAreaTable plain(std::span<const std::uint8_t>(cells), rows, cols);
    for (const std::size_t s : {1u, 2u, 4u, 8u}) {
        DiffSat diff(plain, s);
        for (int q = 0; q < 10000; ++q) {
            std::size_t x1 = rng() % rows + 1, x2 = rng() % rows + 1;
            std::size_t y1 = rng() % cols + 1, y2 = rng() % cols + 1;
            if (x1 > x2) std::swap(x1, x2);
            if (y1 > y2) std::swap(y1, y2);
            if (diff.count_range(x1, y1, x2, y2) != plain.count_range(x1, y1, x2, y2)) {
                std::printf("       mismatch at s=%zu [%zu,%zu]x[%zu,%zu]\n", s, x1, x2, y1, y2);
                return false;
            }
        }
    }
    return true;
}

// 10. Saving and loading a container preserves the answers to a
//     1,000-query randomized suite, for every structure.
bool container_round_trip() {
    GeneratorConfig cfg;
    cfg.num_objects = 20;
    cfg.intervals = 500;
    cfg.seed = 10;
    const auto m = generate(cfg);

    auto answers = [&m](const AnyWarehouse& w, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::vector<std::uint64_t> out;
        std::visit(
            [&](const auto& s) {
                for (int q = 0; q < 1000; ++q) {
                    const std::uint32_t obj = rng() % m.objects() + 1;
                    std::uint32_t i1 = rng() % m.intervals() + 1;
                    std::uint32_t i2 = rng() % m.intervals() + 1;
                    if (i1 > i2) std::swap(i1, i2);
                    const auto a = static_cast<std::uint8_t>(rng() % 9 + 1);
                    const auto b = static_cast<std::uint8_t>(rng() % 9 + 1);
                    switch (q % 5) {
                        case 0: out.push_back(s.activity_at(obj, i1)); break;
                        case 1: {
                            std::uint64_t h = 0;
                            for (const auto& run : s.activities_in_range(obj, i1, i2)) {
                                h = h * 131 + run.activity + run.first_interval * 7 +
                                    run.last_interval * 31;
                            }
                            out.push_back(h);
                            break;
                        }
                        case 2: {
                            const std::vector<std::uint8_t> p{a, b};
                            out.push_back(s.pattern_count(p));
                            break;
                        }
                        case 3: out.push_back(s.aggregate_count(a, 1, m.objects(), i1, i2)); break;
                        default: out.push_back(s.objects_performing(a, i1, i2));
                    }
                }
            },
            w);
        return out;
    };

    for (StructureTag tag : {StructureTag::Naive, StructureTag::BaselinePlus,
                             StructureTag::SemantrixPlain, StructureTag::SemantrixDiff}) {
        const AnyWarehouse original = build_structure(m, tag, 4);
        std::stringstream ss;
        save_warehouse(ss, original);
        const AnyWarehouse loaded = load_warehouse(ss);
        if (answers(original, 1234) != answers(loaded, 1234)) {
            std::printf("       answers changed for %s\n", std::string(tag_name(tag)).c_str());
            return false;
        }
    }
    return true;
}

} // namespace

int main() {
    run(1, "summed-area worked example", sat_worked_example);

    const auto month = month_dataset();
    const NaiveWarehouse naive{month};
    const BaselinePlus bp{month};
    const Semantrix plain(month, {AggregationKind::Plain, 4, 32});
    const Semantrix diff(month, {AggregationKind::Diff, 4, 32});

    run(2, "aggregate equivalence, four structures, month dataset",
        [&] { return aggregate_equivalence(month, naive, bp, plain, diff); });
    run(3, "pattern equivalence, singletons and ordered pairs",
        [&] { return pattern_equivalence(naive, bp, plain); });
    run(4, "individual round trip, 1000 probes, four structures",
        [&] { return individual_round_trip(month, naive, bp, plain, diff); });
    run(5, "space ordering: naive < warehouses, diff < plain",
        [&] { return space_ordering(naive, bp, plain, diff); });
    run(6, "aggregate scaling: area 10 vs 10,000 on the year dataset", aggregate_scaling);
    run(7, "fm-index vs scan oracle, 100 sequences, patterns to length 3", fm_property_suite);
    run(8, "rank/select identities to a million bits", rank_select_identities);
    run(9, "diff tables equal plain tables, s in {1,2,4,8}", diff_equivalence);
    run(10, "container round trip preserves 1000 answers", container_round_trip);

    if (failures == 0) {
        std::printf("all acceptance checks passed\n");
    } else {
        std::printf("%d acceptance check(s) failed\n", failures);
    }
    return failures;
}
