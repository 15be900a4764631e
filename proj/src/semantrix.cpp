#include "semantrix/semantrix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace semantrix {

std::vector<Symbol> run_level_sequence(const ActivityMatrix& m) {
    const Symbol separator = static_cast<Symbol>(m.activities() + 1);
    std::vector<Symbol> seq;
    seq.reserve(m.cells().size() / 2 + m.objects());
    for (std::uint32_t obj = 1; obj <= m.objects(); ++obj) {
        std::uint8_t prev = 0;
        for (std::uint32_t ivl = 1; ivl <= m.intervals(); ++ivl) {
            const std::uint8_t a = m.cells()[m.index(obj, ivl)];
            if (ivl == 1 || a != prev) seq.push_back(a);
            prev = a;
        }
        seq.push_back(separator);
    }
    return seq;
}

Semantrix::Semantrix(const ActivityMatrix& m, const SemantrixConfig& cfg)
    : meta_(m.meta()), agg_kind_(cfg.aggregation) {
    const std::uint32_t r = m.objects();
    const std::uint32_t intervals = m.intervals();
    const auto& cells = m.cells();

    // B: 1 at each object's first cell and wherever the activity switches.
    std::vector<bool> bits(cells.size());
    for (std::uint32_t obj = 0; obj < r; ++obj) {
        const std::size_t row = static_cast<std::size_t>(obj) * intervals;
        bits[row] = true;
        for (std::uint32_t i = 1; i < intervals; ++i) {
            bits[row + i] = cells[row + i] != cells[row + i - 1];
        }
    }
    run_starts_ = BitVector(bits);

    run_activities_.reserve(run_starts_.ones());
    for (std::size_t p = 0; p < cells.size(); ++p) {
        if (bits[p]) run_activities_.push_back(cells[p]);
    }

    fm_ = FmIndex(run_level_sequence(m), cfg.fm_sample_rate,
                  static_cast<Symbol>(m.activities() + 1));

    // One aggregation table per activity over its 0/1 indicator matrix.
    std::vector<std::uint8_t> indicator(cells.size());
    for (std::uint8_t a = 1; a <= m.activities(); ++a) {
        for (std::size_t p = 0; p < cells.size(); ++p) indicator[p] = cells[p] == a;
        const std::span<const std::uint8_t> view(indicator);
        if (agg_kind_ == AggregationKind::Plain) {
            tables_plain_.emplace_back(view, r, intervals);
        } else {
            tables_diff_.emplace_back(view, r, intervals, cfg.diff_sample_period);
        }
    }
}

std::uint8_t Semantrix::activity_at(std::uint32_t object, std::uint32_t interval) const {
    if (object < 1 || object > meta_.objects) {
        throw std::out_of_range("Semantrix: object out of range");
    }
    if (interval < 1 || interval > meta_.intervals) {
        throw std::out_of_range("Semantrix: interval out of range");
    }
    const std::uint64_t pos =
        static_cast<std::uint64_t>(object - 1) * meta_.intervals + interval;
    return run_activities_[run_starts_.rank1(pos) - 1];
}

std::vector<ActivityRun> Semantrix::activities_in_range(std::uint32_t object, std::uint32_t first,
                                                        std::uint32_t last) const {
    if (object < 1 || object > meta_.objects) {
        throw std::out_of_range("Semantrix: object out of range");
    }
    if (first < 1 || last > meta_.intervals || first > last) {
        throw std::out_of_range("Semantrix: interval range invalid");
    }
    const std::uint64_t row_base = static_cast<std::uint64_t>(object - 1) * meta_.intervals;
    const std::uint64_t total_runs = run_starts_.ones();

    std::vector<ActivityRun> runs;
    std::uint64_t k = run_starts_.rank1(row_base + first); // run covering `first`
    while (true) {
        const std::uint64_t start_pos = run_starts_.select1(k);
        // A run never crosses an object boundary: the next run starts at the
        // following 1, and each object's first cell carries one.
        const std::uint64_t end_pos =
            k < total_runs ? run_starts_.select1(k + 1) - 1
                           : static_cast<std::uint64_t>(meta_.objects) * meta_.intervals;
        const std::uint32_t run_first = static_cast<std::uint32_t>(start_pos - row_base);
        const std::uint32_t run_last = static_cast<std::uint32_t>(end_pos - row_base);
        runs.push_back({run_activities_[k - 1], std::max(run_first, first),
                        std::min(run_last, last)});
        if (run_last >= last) break;
        ++k;
    }
    return runs;
}

void Semantrix::validate_pattern(std::span<const std::uint8_t> pattern) const {
    if (pattern.empty()) throw std::invalid_argument("Semantrix: empty pattern");
    for (std::uint8_t a : pattern) {
        if (a < 1 || a > meta_.activities) {
            throw std::invalid_argument("Semantrix: pattern activity outside [1..sigma]");
        }
    }
}

std::uint64_t Semantrix::pattern_count(std::span<const std::uint8_t> pattern) const {
    validate_pattern(pattern);
    return fm_.count(pattern);
}

std::uint32_t Semantrix::object_of_fm_position(std::uint64_t q) const {
    // Object j's runs occupy positions runs_upto(j-1)+j .. runs_upto(j)+j-1
    // of the separator-delimited sequence, where runs_upto(j) counts the
    // runs of objects 1..j. Find the smallest j with q <= runs_upto(j)+j-1.
    std::uint32_t lo = 1, hi = meta_.objects;
    while (lo < hi) {
        const std::uint32_t mid = lo + (hi - lo) / 2;
        const std::uint64_t block_end =
            run_starts_.rank1(static_cast<std::uint64_t>(mid) * meta_.intervals) + mid - 1;
        if (q <= block_end) hi = mid; else lo = mid + 1;
    }
    return lo;
}

std::vector<PatternHit> Semantrix::pattern_occurrences(
    std::span<const std::uint8_t> pattern) const {
    validate_pattern(pattern);
    std::vector<PatternHit> hits;
    for (std::uint64_t q : fm_.locate(pattern)) {
        const std::uint32_t obj = object_of_fm_position(q);
        const std::uint64_t run_index = q - (obj - 1); // separators before q
        const std::uint64_t os_pos = run_starts_.select1(run_index);
        hits.push_back({obj, static_cast<std::uint32_t>(
                                 os_pos - static_cast<std::uint64_t>(obj - 1) * meta_.intervals)});
    }
    return hits;
}

void Semantrix::check_rectangle(std::uint8_t activity, std::uint32_t obj_first,
                                std::uint32_t obj_last, std::uint32_t ivl_first,
                                std::uint32_t ivl_last) const {
    if (activity < 1 || activity > meta_.activities) {
        throw std::invalid_argument("Semantrix: activity outside [1..sigma]");
    }
    if (obj_first < 1 || obj_last > meta_.objects || obj_first > obj_last) {
        throw std::out_of_range("Semantrix: object range invalid");
    }
    if (ivl_first < 1 || ivl_last > meta_.intervals || ivl_first > ivl_last) {
        throw std::out_of_range("Semantrix: interval range invalid");
    }
}

std::uint64_t Semantrix::table_count(std::uint8_t activity, std::uint32_t obj_first,
                                     std::uint32_t obj_last, std::uint32_t ivl_first,
                                     std::uint32_t ivl_last) const {
    if (agg_kind_ == AggregationKind::Plain) {
        return tables_plain_[activity - 1].count_range(obj_first, ivl_first, obj_last, ivl_last);
    }
    return tables_diff_[activity - 1].count_range(obj_first, ivl_first, obj_last, ivl_last);
}

std::uint64_t Semantrix::aggregate_count(std::uint8_t activity, std::uint32_t obj_first,
                                         std::uint32_t obj_last, std::uint32_t ivl_first,
                                         std::uint32_t ivl_last) const {
    check_rectangle(activity, obj_first, obj_last, ivl_first, ivl_last);
    return table_count(activity, obj_first, obj_last, ivl_first, ivl_last);
}

std::uint64_t Semantrix::aggregate_duration_minutes(std::uint8_t activity, std::uint32_t obj_first,
                                                    std::uint32_t obj_last,
                                                    std::uint32_t ivl_first,
                                                    std::uint32_t ivl_last) const {
    return aggregate_count(activity, obj_first, obj_last, ivl_first, ivl_last) *
           meta_.interval_minutes;
}

std::uint32_t Semantrix::objects_performing(std::uint8_t activity, std::uint32_t ivl_first,
                                            std::uint32_t ivl_last) const {
    check_rectangle(activity, 1, meta_.objects, ivl_first, ivl_last);
    std::uint32_t n = 0;
    for (std::uint32_t obj = 1; obj <= meta_.objects; ++obj) {
        if (table_count(activity, obj, obj, ivl_first, ivl_last) > 0) ++n;
    }
    return n;
}

std::uint64_t Semantrix::ComponentSizes::total() const {
    return bitvector + runs + fm_index +
           std::accumulate(per_activity_table.begin(), per_activity_table.end(),
                           std::uint64_t{0});
}

Semantrix::ComponentSizes Semantrix::component_sizes() const {
    ComponentSizes s;
    s.bitvector = run_starts_.byte_size();
    s.runs = 8 + run_activities_.size(); // length prefix + one byte per run
    s.fm_index = fm_.byte_size();
    if (agg_kind_ == AggregationKind::Plain) {
        for (const auto& t : tables_plain_) s.per_activity_table.push_back(t.byte_size());
    } else {
        for (const auto& t : tables_diff_) s.per_activity_table.push_back(t.byte_size());
    }
    return s;
}

void Semantrix::save(std::ostream& out) const {
    io::write_u8(out, static_cast<std::uint8_t>(agg_kind_));
    run_starts_.save(out);
    io::write_u64(out, run_activities_.size());
    io::write_bytes(out, run_activities_.data(), run_activities_.size());
    fm_.save(out);
    if (agg_kind_ == AggregationKind::Plain) {
        for (const auto& t : tables_plain_) t.save(out);
    } else {
        for (const auto& t : tables_diff_) t.save(out);
    }
}

Semantrix Semantrix::load(std::istream& in, WarehouseMeta meta) {
    Semantrix sx;
    sx.meta_ = std::move(meta);
    sx.agg_kind_ = static_cast<AggregationKind>(io::read_u8(in));
    sx.run_starts_ = BitVector::load(in);
    const std::uint64_t o = io::read_u64(in);
    sx.run_activities_.resize(o);
    io::read_bytes(in, sx.run_activities_.data(), o);
    sx.fm_ = FmIndex::load(in);
    for (std::uint8_t a = 1; a <= sx.meta_.activities; ++a) {
        if (sx.agg_kind_ == AggregationKind::Plain) {
            sx.tables_plain_.push_back(SummedAreaTable::load(in));
        } else {
            sx.tables_diff_.push_back(DiffSat::load(in));
        }
    }
    return sx;
}

} // namespace semantrix
