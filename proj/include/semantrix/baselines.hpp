#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "semantrix/activity_matrix.hpp"
#include "semantrix/fm_index.hpp"
#include "semantrix/semantrix.hpp"

namespace semantrix {

/// The uncompressed matrix answering every query by scanning. Smallest
/// structure, slowest queries, and the correctness oracle for the others.
class NaiveWarehouse {
public:
    NaiveWarehouse() = default;
    explicit NaiveWarehouse(ActivityMatrix m) : matrix_(std::move(m)) {}

    const WarehouseMeta& meta() const { return matrix_.meta(); }
    const ActivityMatrix& matrix() const { return matrix_; }

    std::uint8_t activity_at(std::uint32_t object, std::uint32_t interval) const {
        return matrix_.at(object, interval);
    }

    std::vector<ActivityRun> activities_in_range(std::uint32_t object, std::uint32_t first,
                                                 std::uint32_t last) const;

    /// Run-level occurrence count: run-length encodes each row and counts
    /// consecutive run matches.
    std::uint64_t pattern_count(std::span<const std::uint8_t> pattern) const;

    /// Double loop over the queried rectangle.
    std::uint64_t aggregate_count(std::uint8_t activity, std::uint32_t obj_first,
                                  std::uint32_t obj_last, std::uint32_t ivl_first,
                                  std::uint32_t ivl_last) const;

    std::uint64_t aggregate_duration_minutes(std::uint8_t activity, std::uint32_t obj_first,
                                             std::uint32_t obj_last, std::uint32_t ivl_first,
                                             std::uint32_t ivl_last) const;

    std::uint32_t objects_performing(std::uint8_t activity, std::uint32_t ivl_first,
                                     std::uint32_t ivl_last) const;

    std::uint64_t byte_size() const { return matrix_.cells().size(); }

    void save(std::ostream& out) const;
    static NaiveWarehouse load(std::istream& in, WarehouseMeta meta);

private:
    void check_rectangle(std::uint8_t activity, std::uint32_t obj_first, std::uint32_t obj_last,
                         std::uint32_t ivl_first, std::uint32_t ivl_last) const;
    void validate_pattern(std::span<const std::uint8_t> pattern) const;

    ActivityMatrix matrix_;
};

/// Competitor keeping the row-major activity sequence OS verbatim, the same
/// run-level FM-index as Semantrix, and per-activity cumulative sequences
/// C_a with C_a[p] = occurrences of a in OS[1..p]. Aggregation over an
/// object range costs one subtraction per object.
class BaselinePlus {
public:
    BaselinePlus() = default;
    explicit BaselinePlus(const ActivityMatrix& m,
                          unsigned fm_sample_rate = FmIndex::kDefaultSampleRate);

    const WarehouseMeta& meta() const { return meta_; }

    std::uint8_t activity_at(std::uint32_t object, std::uint32_t interval) const;

    std::vector<ActivityRun> activities_in_range(std::uint32_t object, std::uint32_t first,
                                                 std::uint32_t last) const;

    std::uint64_t pattern_count(std::span<const std::uint8_t> pattern) const;

    /// Sum over queried objects of C_a[(j-1)I + last] - C_a[(j-1)I + first - 1].
    std::uint64_t aggregate_count(std::uint8_t activity, std::uint32_t obj_first,
                                  std::uint32_t obj_last, std::uint32_t ivl_first,
                                  std::uint32_t ivl_last) const;

    std::uint64_t aggregate_duration_minutes(std::uint8_t activity, std::uint32_t obj_first,
                                             std::uint32_t obj_last, std::uint32_t ivl_first,
                                             std::uint32_t ivl_last) const;

    std::uint32_t objects_performing(std::uint8_t activity, std::uint32_t ivl_first,
                                     std::uint32_t ivl_last) const;

    /// C_a[p] for p in 0..r*I (p = 0 gives 0).
    std::uint64_t cumulative(std::uint8_t activity, std::uint64_t p) const;

    std::uint64_t byte_size() const;

    void save(std::ostream& out) const;
    static BaselinePlus load(std::istream& in, WarehouseMeta meta);

private:
    void check_rectangle(std::uint8_t activity, std::uint32_t obj_first, std::uint32_t obj_last,
                         std::uint32_t ivl_first, std::uint32_t ivl_last) const;
    void validate_pattern(std::span<const std::uint8_t> pattern) const;

    WarehouseMeta meta_;
    std::vector<std::uint8_t> os_;                    // row-major cells, 1 byte each
    FmIndex fm_;                                      // run-level, separator-delimited
    std::vector<std::vector<std::uint32_t>> cum_;     // per activity, r*I prefix counts
};

} // namespace semantrix
