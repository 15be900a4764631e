#include "semantrix/baselines.hpp"

#include <stdexcept>

namespace semantrix {

namespace {

// Shared row scan for the range query: maximal runs clipped to [first, last].
std::vector<ActivityRun> scan_runs(const std::uint8_t* row, std::uint32_t first,
                                   std::uint32_t last) {
    std::vector<ActivityRun> runs;
    std::uint32_t run_start = first;
    std::uint8_t current = row[first - 1];
    for (std::uint32_t i = first + 1; i <= last; ++i) {
        if (row[i - 1] != current) {
            runs.push_back({current, run_start, i - 1});
            current = row[i - 1];
            run_start = i;
        }
    }
    runs.push_back({current, run_start, last});
    return runs;
}

std::uint64_t scan_pattern_count(const ActivityMatrix& m,
                                 std::span<const std::uint8_t> pattern) {
    std::uint64_t count = 0;
    std::vector<std::uint8_t> run_ids;
    for (std::uint32_t obj = 1; obj <= m.objects(); ++obj) {
        run_ids.clear();
        for (std::uint32_t ivl = 1; ivl <= m.intervals(); ++ivl) {
            const std::uint8_t a = m.at(obj, ivl);
            if (run_ids.empty() || run_ids.back() != a) run_ids.push_back(a);
        }
        if (run_ids.size() < pattern.size()) continue;
        for (std::size_t s = 0; s + pattern.size() <= run_ids.size(); ++s) {
            bool hit = true;
            for (std::size_t t = 0; t < pattern.size(); ++t) {
                if (run_ids[s + t] != pattern[t]) { hit = false; break; }
            }
            if (hit) ++count;
        }
    }
    return count;
}

void check_ranges(const WarehouseMeta& meta, std::uint8_t activity, std::uint32_t obj_first,
                  std::uint32_t obj_last, std::uint32_t ivl_first, std::uint32_t ivl_last) {
    if (activity < 1 || activity > meta.activities) {
        throw std::invalid_argument("warehouse: activity outside [1..sigma]");
    }
    if (obj_first < 1 || obj_last > meta.objects || obj_first > obj_last) {
        throw std::out_of_range("warehouse: object range invalid");
    }
    if (ivl_first < 1 || ivl_last > meta.intervals || ivl_first > ivl_last) {
        throw std::out_of_range("warehouse: interval range invalid");
    }
}

void check_pattern(const WarehouseMeta& meta, std::span<const std::uint8_t> pattern) {
    if (pattern.empty()) throw std::invalid_argument("warehouse: empty pattern");
    for (std::uint8_t a : pattern) {
        if (a < 1 || a > meta.activities) {
            throw std::invalid_argument("warehouse: pattern activity outside [1..sigma]");
        }
    }
}

} // namespace

// ---------------------------------------------------------------------------
// NaiveWarehouse

std::vector<ActivityRun> NaiveWarehouse::activities_in_range(std::uint32_t object,
                                                             std::uint32_t first,
                                                             std::uint32_t last) const {
    matrix_.check_indices(object, first);
    matrix_.check_indices(object, last);
    if (first > last) throw std::out_of_range("warehouse: interval range invalid");
    return scan_runs(matrix_.cells().data() + matrix_.index(object, 1), first, last);
}

std::uint64_t NaiveWarehouse::pattern_count(std::span<const std::uint8_t> pattern) const {
    validate_pattern(pattern);
    return scan_pattern_count(matrix_, pattern);
}

std::uint64_t NaiveWarehouse::aggregate_count(std::uint8_t activity, std::uint32_t obj_first,
                                              std::uint32_t obj_last, std::uint32_t ivl_first,
                                              std::uint32_t ivl_last) const {
    check_rectangle(activity, obj_first, obj_last, ivl_first, ivl_last);
    std::uint64_t count = 0;
    const auto& cells = matrix_.cells();
    for (std::uint32_t obj = obj_first; obj <= obj_last; ++obj) {
        const std::size_t row = matrix_.index(obj, 1);
        for (std::uint32_t ivl = ivl_first; ivl <= ivl_last; ++ivl) {
            count += cells[row + ivl - 1] == activity;
        }
    }
    return count;
}

std::uint64_t NaiveWarehouse::aggregate_duration_minutes(std::uint8_t activity,
                                                         std::uint32_t obj_first,
                                                         std::uint32_t obj_last,
                                                         std::uint32_t ivl_first,
                                                         std::uint32_t ivl_last) const {
    return aggregate_count(activity, obj_first, obj_last, ivl_first, ivl_last) *
           meta().interval_minutes;
}

std::uint32_t NaiveWarehouse::objects_performing(std::uint8_t activity, std::uint32_t ivl_first,
                                                 std::uint32_t ivl_last) const {
    check_rectangle(activity, 1, meta().objects, ivl_first, ivl_last);
    std::uint32_t n = 0;
    for (std::uint32_t obj = 1; obj <= meta().objects; ++obj) {
        if (aggregate_count(activity, obj, obj, ivl_first, ivl_last) > 0) ++n;
    }
    return n;
}

void NaiveWarehouse::check_rectangle(std::uint8_t activity, std::uint32_t obj_first,
                                     std::uint32_t obj_last, std::uint32_t ivl_first,
                                     std::uint32_t ivl_last) const {
    check_ranges(meta(), activity, obj_first, obj_last, ivl_first, ivl_last);
}

void NaiveWarehouse::validate_pattern(std::span<const std::uint8_t> pattern) const {
    check_pattern(meta(), pattern);
}

void NaiveWarehouse::save(std::ostream& out) const {
    io::write_bytes(out, matrix_.cells().data(), matrix_.cells().size());
}

NaiveWarehouse NaiveWarehouse::load(std::istream& in, WarehouseMeta meta) {
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(meta.objects) * meta.intervals);
    io::read_bytes(in, cells.data(), cells.size());
    return NaiveWarehouse(ActivityMatrix(std::move(meta), std::move(cells)));
}

// ---------------------------------------------------------------------------
// BaselinePlus

BaselinePlus::BaselinePlus(const ActivityMatrix& m, unsigned fm_sample_rate)
    : meta_(m.meta()), os_(m.cells()),
      fm_(run_level_sequence(m), fm_sample_rate, static_cast<Symbol>(m.activities() + 1)) {
    cum_.assign(meta_.activities, {});
    for (auto& c : cum_) c.assign(os_.size(), 0);
    std::vector<std::uint32_t> running(meta_.activities, 0);
    for (std::size_t p = 0; p < os_.size(); ++p) {
        ++running[os_[p] - 1];
        for (std::uint8_t a = 0; a < meta_.activities; ++a) cum_[a][p] = running[a];
    }
}

std::uint8_t BaselinePlus::activity_at(std::uint32_t object, std::uint32_t interval) const {
    if (object < 1 || object > meta_.objects) {
        throw std::out_of_range("warehouse: object out of range");
    }
    if (interval < 1 || interval > meta_.intervals) {
        throw std::out_of_range("warehouse: interval out of range");
    }
    return os_[static_cast<std::size_t>(object - 1) * meta_.intervals + interval - 1];
}

std::vector<ActivityRun> BaselinePlus::activities_in_range(std::uint32_t object,
                                                           std::uint32_t first,
                                                           std::uint32_t last) const {
    if (object < 1 || object > meta_.objects) {
        throw std::out_of_range("warehouse: object out of range");
    }
    if (first < 1 || last > meta_.intervals || first > last) {
        throw std::out_of_range("warehouse: interval range invalid");
    }
    return scan_runs(os_.data() + static_cast<std::size_t>(object - 1) * meta_.intervals, first,
                     last);
}

std::uint64_t BaselinePlus::pattern_count(std::span<const std::uint8_t> pattern) const {
    validate_pattern(pattern);
    return fm_.count(pattern);
}

std::uint64_t BaselinePlus::cumulative(std::uint8_t activity, std::uint64_t p) const {
    if (activity < 1 || activity > meta_.activities) {
        throw std::invalid_argument("warehouse: activity outside [1..sigma]");
    }
    if (p > os_.size()) throw std::out_of_range("warehouse: cumulative position past end");
    return p == 0 ? 0 : cum_[activity - 1][p - 1];
}

std::uint64_t BaselinePlus::aggregate_count(std::uint8_t activity, std::uint32_t obj_first,
                                            std::uint32_t obj_last, std::uint32_t ivl_first,
                                            std::uint32_t ivl_last) const {
    check_rectangle(activity, obj_first, obj_last, ivl_first, ivl_last);
    const auto& c = cum_[activity - 1];
    std::uint64_t count = 0;
    for (std::uint32_t obj = obj_first; obj <= obj_last; ++obj) {
        const std::uint64_t row = static_cast<std::uint64_t>(obj - 1) * meta_.intervals;
        const std::uint64_t hi = c[row + ivl_last - 1];
        const std::uint64_t lo = (row + ivl_first - 1) == 0 ? 0 : c[row + ivl_first - 2];
        count += hi - lo;
    }
    return count;
}

std::uint64_t BaselinePlus::aggregate_duration_minutes(std::uint8_t activity,
                                                       std::uint32_t obj_first,
                                                       std::uint32_t obj_last,
                                                       std::uint32_t ivl_first,
                                                       std::uint32_t ivl_last) const {
    return aggregate_count(activity, obj_first, obj_last, ivl_first, ivl_last) *
           meta_.interval_minutes;
}

std::uint32_t BaselinePlus::objects_performing(std::uint8_t activity, std::uint32_t ivl_first,
                                               std::uint32_t ivl_last) const {
    check_rectangle(activity, 1, meta_.objects, ivl_first, ivl_last);
    std::uint32_t n = 0;
    for (std::uint32_t obj = 1; obj <= meta_.objects; ++obj) {
        if (aggregate_count(activity, obj, obj, ivl_first, ivl_last) > 0) ++n;
    }
    return n;
}

std::uint64_t BaselinePlus::byte_size() const {
    return os_.size() + fm_.byte_size() +
           static_cast<std::uint64_t>(meta_.activities) * os_.size() * 4;
}

void BaselinePlus::save(std::ostream& out) const {
    io::write_bytes(out, os_.data(), os_.size());
    fm_.save(out);
    for (const auto& c : cum_) {
        for (std::uint32_t v : c) io::write_u32(out, v);
    }
}

BaselinePlus BaselinePlus::load(std::istream& in, WarehouseMeta meta) {
    BaselinePlus bp;
    bp.meta_ = std::move(meta);
    bp.os_.resize(static_cast<std::size_t>(bp.meta_.objects) * bp.meta_.intervals);
    io::read_bytes(in, bp.os_.data(), bp.os_.size());
    bp.fm_ = FmIndex::load(in);
    bp.cum_.assign(bp.meta_.activities, {});
    for (auto& c : bp.cum_) {
        c.resize(bp.os_.size());
        for (auto& v : c) v = io::read_u32(in);
    }
    return bp;
}

void BaselinePlus::check_rectangle(std::uint8_t activity, std::uint32_t obj_first,
                                   std::uint32_t obj_last, std::uint32_t ivl_first,
                                   std::uint32_t ivl_last) const {
    check_ranges(meta_, activity, obj_first, obj_last, ivl_first, ivl_last);
}

void BaselinePlus::validate_pattern(std::span<const std::uint8_t> pattern) const {
    check_pattern(meta_, pattern);
}

} // namespace semantrix
