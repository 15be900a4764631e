#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "semantrix/activity_matrix.hpp"
#include "semantrix/bitvector.hpp"
#include "semantrix/fm_index.hpp"
#include "semantrix/sat.hpp"

namespace semantrix {

enum class AggregationKind : std::uint8_t { Plain = 0, Diff = 1 };

struct SemantrixConfig {
    AggregationKind aggregation = AggregationKind::Plain;
    std::uint32_t diff_sample_period = 4;
    unsigned fm_sample_rate = FmIndex::kDefaultSampleRate;
};

/// One maximal stretch of a single activity, clipped to the queried range.
struct ActivityRun {
    std::uint8_t activity;
    std::uint32_t first_interval;
    std::uint32_t last_interval;

    friend bool operator==(const ActivityRun&, const ActivityRun&) = default;
};

struct PatternHit {
    std::uint32_t object;
    std::uint32_t interval; // first interval of the matched run sequence

    friend bool operator==(const PatternHit&, const PatternHit&) = default;
};

/// The sequence the pattern index is built over: each object's run
/// activity-ids in order, followed by one separator symbol (sigma + 1) so
/// that patterns cannot match across object boundaries.
std::vector<Symbol> run_level_sequence(const ActivityMatrix& m);

/// Compressed warehouse over an activity matrix. Holds
///   - B: a bitvector over the row-major cell sequence with a 1 at every
///     activity switch and at every object's first cell,
///   - H: one activity id per run (aligned with the ones in B),
///   - an FM-index over the separator-delimited run sequence for pattern
///     queries,
///   - one summed area table per activity (plain or row-sampled diff) for
///     aggregated queries.
/// Immutable after construction; readers may query concurrently.
class Semantrix {
public:
    Semantrix() = default;
    explicit Semantrix(const ActivityMatrix& m, const SemantrixConfig& cfg = {});

    const WarehouseMeta& meta() const { return meta_; }
    std::uint32_t objects() const { return meta_.objects; }
    std::uint32_t intervals() const { return meta_.intervals; }
    std::uint8_t activities() const { return meta_.activities; }
    AggregationKind aggregation_kind() const { return agg_kind_; }
    std::uint64_t run_count() const { return run_activities_.size(); }

    /// Activity of one cell: H[rank1(B, cell position)].
    std::uint8_t activity_at(std::uint32_t object, std::uint32_t interval) const;

    /// Maximal runs covering [first..last] of one object's row, clipped.
    std::vector<ActivityRun> activities_in_range(std::uint32_t object, std::uint32_t first,
                                                 std::uint32_t last) const;

    /// Occurrences of the pattern as consecutive runs within one object.
    std::uint64_t pattern_count(std::span<const std::uint8_t> pattern) const;
    std::vector<PatternHit> pattern_occurrences(std::span<const std::uint8_t> pattern) const;

    /// Cells holding activity a inside the object x interval rectangle;
    /// answered from the activity's summed area table.
    std::uint64_t aggregate_count(std::uint8_t activity, std::uint32_t obj_first,
                                  std::uint32_t obj_last, std::uint32_t ivl_first,
                                  std::uint32_t ivl_last) const;

    std::uint64_t aggregate_duration_minutes(std::uint8_t activity, std::uint32_t obj_first,
                                             std::uint32_t obj_last, std::uint32_t ivl_first,
                                             std::uint32_t ivl_last) const;

    /// Objects with at least one cell of the activity in the interval range.
    std::uint32_t objects_performing(std::uint8_t activity, std::uint32_t ivl_first,
                                     std::uint32_t ivl_last) const;

    struct ComponentSizes {
        std::uint64_t bitvector = 0;
        std::uint64_t runs = 0;
        std::uint64_t fm_index = 0;
        std::vector<std::uint64_t> per_activity_table;
        std::uint64_t total() const;
    };
    ComponentSizes component_sizes() const;
    std::uint64_t byte_size() const { return component_sizes().total(); }

    void save(std::ostream& out) const;
    static Semantrix load(std::istream& in, WarehouseMeta meta);

private:
    void validate_pattern(std::span<const std::uint8_t> pattern) const;
    void check_rectangle(std::uint8_t activity, std::uint32_t obj_first, std::uint32_t obj_last,
                         std::uint32_t ivl_first, std::uint32_t ivl_last) const;
    // Object owning position q of the separator-delimited run sequence.
    std::uint32_t object_of_fm_position(std::uint64_t q) const;
    std::uint64_t table_count(std::uint8_t activity, std::uint32_t obj_first,
                              std::uint32_t obj_last, std::uint32_t ivl_first,
                              std::uint32_t ivl_last) const;

    WarehouseMeta meta_;
    BitVector run_starts_;                     // B, length r*I
    std::vector<std::uint8_t> run_activities_; // H, one id per run
    FmIndex fm_;                               // over run_level_sequence
    AggregationKind agg_kind_ = AggregationKind::Plain;
    std::vector<SummedAreaTable> tables_plain_; // one per activity, when Plain
    std::vector<DiffSat> tables_diff_;          // one per activity, when Diff
};

} // namespace semantrix
