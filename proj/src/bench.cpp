#include "semantrix/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <random>
#include <stdexcept>

namespace semantrix {

namespace {

inline void keep(std::uint64_t v) { asm volatile("" : : "r"(v)); }

struct IndividualQuery {
    std::uint32_t object, interval;
};
struct PatternQuery {
    std::array<std::uint8_t, 2> activities;
};
struct AggregateQuery {
    std::uint8_t activity;
    std::uint32_t obj_first, obj_last, ivl_first, ivl_last;
};

struct Workload {
    std::vector<IndividualQuery> individual;
    std::vector<PatternQuery> pattern;
    std::vector<AggregateQuery> aggregate;
};

Workload make_workload(const WarehouseMeta& meta, const BenchConfig& cfg) {
    if (cfg.agg_objects < 1 || cfg.agg_objects > meta.objects ||
        cfg.agg_intervals < 1 || cfg.agg_intervals > meta.intervals) {
        throw std::invalid_argument("bench: aggregate window does not fit the dataset");
    }
    std::mt19937_64 rng(cfg.query_seed);
    auto uniform = [&rng](std::uint64_t n) { return static_cast<std::uint32_t>(rng() % n); };

    Workload w;
    w.individual.reserve(cfg.queries_per_type);
    w.pattern.reserve(cfg.queries_per_type);
    w.aggregate.reserve(cfg.queries_per_type);
    for (std::uint32_t q = 0; q < cfg.queries_per_type; ++q) {
        w.individual.push_back({uniform(meta.objects) + 1, uniform(meta.intervals) + 1});
    }
    for (std::uint32_t q = 0; q < cfg.queries_per_type; ++q) {
        w.pattern.push_back({{static_cast<std::uint8_t>(uniform(meta.activities) + 1),
                              static_cast<std::uint8_t>(uniform(meta.activities) + 1)}});
    }
    for (std::uint32_t q = 0; q < cfg.queries_per_type; ++q) {
        const std::uint32_t j = uniform(meta.objects - cfg.agg_objects + 1) + 1;
        const std::uint32_t i = uniform(meta.intervals - cfg.agg_intervals + 1) + 1;
        w.aggregate.push_back({static_cast<std::uint8_t>(uniform(meta.activities) + 1), j,
                               j + cfg.agg_objects - 1, i, i + cfg.agg_intervals - 1});
    }
    return w;
}

// Runs `op` once per query unmeasured, then once measured; fills mean/median.
template <class Queries, class Op>
BenchRow time_workload(const std::string& structure, const std::string& type,
                       const Queries& queries, std::uint64_t bytes, Op&& op) {
    for (const auto& q : queries) keep(op(q));

    std::vector<std::int64_t> ns(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        keep(op(queries[i]));
        const auto t1 = std::chrono::steady_clock::now();
        ns[i] = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    }
    double total = 0.0;
    for (std::int64_t v : ns) total += static_cast<double>(v);
    std::sort(ns.begin(), ns.end());
    const double median =
        ns.empty() ? 0.0
        : ns.size() % 2 == 1
            ? static_cast<double>(ns[ns.size() / 2])
            : (static_cast<double>(ns[ns.size() / 2 - 1]) + static_cast<double>(ns[ns.size() / 2])) / 2.0;
    BenchRow row{structure, type, queries.size(), 0.0, 0.0, bytes};
    row.mean_us = queries.empty() ? 0.0 : total / static_cast<double>(queries.size()) / 1000.0;
    row.median_us = median / 1000.0;
    return row;
}

} // namespace

std::vector<BenchRow> run_bench(const ActivityMatrix& m, const BenchConfig& cfg) {
    const Workload w = make_workload(m.meta(), cfg);
    for (const auto& type : cfg.query_types) {
        if (type != "individual" && type != "pattern" && type != "aggregate") {
            throw std::invalid_argument("bench: unknown query type '" + type + "'");
        }
    }
    auto wanted = [&cfg](const char* type) {
        return std::find(cfg.query_types.begin(), cfg.query_types.end(), type) !=
               cfg.query_types.end();
    };
    std::vector<BenchRow> rows;

    for (StructureTag tag : cfg.structures) {
        const AnyWarehouse wh =
            build_structure(m, tag, cfg.diff_sample_period, cfg.fm_sample_rate);
        const std::uint64_t bytes = byte_size_of(wh);
        const std::string name(tag_name(tag));

        std::visit(
            [&](const auto& s) {
                if (wanted("individual")) {
                    rows.push_back(time_workload(name, "individual", w.individual, bytes,
                                                 [&s](const IndividualQuery& q) -> std::uint64_t {
                                                     return s.activity_at(q.object, q.interval);
                                                 }));
                }
                if (wanted("pattern")) {
                    rows.push_back(time_workload(name, "pattern", w.pattern, bytes,
                                                 [&s](const PatternQuery& q) {
                                                     return s.pattern_count(q.activities);
                                                 }));
                }
                if (wanted("aggregate")) {
                    rows.push_back(time_workload(name, "aggregate", w.aggregate, bytes,
                                                 [&s](const AggregateQuery& q) {
                                                     return s.aggregate_count(
                                                         q.activity, q.obj_first, q.obj_last,
                                                         q.ivl_first, q.ivl_last);
                                                 }));
                }
            },
            wh);
        rows.push_back({name, "space", 0, 0.0, 0.0, bytes});
    }
    return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "structure,query_type,n,mean_us,median_us,bytes\n";
    for (const auto& r : rows) {
        out << r.structure << ',' << r.query_type << ',' << r.n << ',' << r.mean_us << ','
            << r.median_us << ',' << r.bytes << '\n';
    }
}

} // namespace semantrix
