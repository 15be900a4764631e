#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "semantrix/container.hpp"
#include "semantrix/synth.hpp"

namespace semantrix {

struct BenchConfig {
    std::vector<StructureTag> structures = {
        StructureTag::Naive,
        StructureTag::BaselinePlus,
        StructureTag::SemantrixPlain,
        StructureTag::SemantrixDiff,
    };
    std::uint32_t queries_per_type = 10000;
    std::uint64_t query_seed = 1;
    // Workloads to time; "space" rows are always emitted.
    std::vector<std::string> query_types = {"individual", "pattern", "aggregate"};
    // Aggregate query family: a random activity over a random window of
    // `agg_objects` consecutive objects and `agg_intervals` consecutive
    // intervals (three trucks over one clock hour by default).
    std::uint32_t agg_objects = 3;
    std::uint32_t agg_intervals = 12;
    std::uint32_t diff_sample_period = 4;
    unsigned fm_sample_rate = FmIndex::kDefaultSampleRate;
};

struct BenchRow {
    std::string structure;
    std::string query_type; // individual | pattern | aggregate | space
    std::uint64_t n = 0;
    double mean_us = 0.0;
    double median_us = 0.0;
    std::uint64_t bytes = 0;
};

/// Builds each requested structure over the matrix and times the three
/// query workloads per structure (one warm-up pass, then one timed pass,
/// wall clock per query). The same seed always produces the same queries.
std::vector<BenchRow> run_bench(const ActivityMatrix& m, const BenchConfig& cfg);

/// CSV with header `structure,query_type,n,mean_us,median_us,bytes`.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

} // namespace semantrix
