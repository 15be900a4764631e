#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semantrix/activity_matrix.hpp"

namespace semantrix {

/// One labeled trajectory segment as delivered by the upstream segmenter.
struct SegmentRecord {
    std::string object_id;
    std::int64_t start_ts = 0; // unix seconds
    std::int64_t end_ts = 0;   // exclusive, must exceed start_ts
    std::string label;
};

/// Parse error carrying the 1-based line number of the offending row.
class CsvError : public std::runtime_error {
public:
    CsvError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Unix seconds from either a plain integer or an RFC-3339 timestamp
/// (e.g. 2026-08-10T13:00:00Z, offsets and fractional seconds accepted).
std::int64_t parse_timestamp(std::string_view text);

/// RFC-3339 UTC rendering of unix seconds.
std::string format_timestamp(std::int64_t unix_seconds);

/// Reads `object,start,end,label` rows. Malformed rows, bad timestamps and
/// start >= end raise CsvError naming the line.
std::vector<SegmentRecord> parse_segments(std::istream& in);
std::vector<SegmentRecord> parse_segments_file(const std::string& path);

struct DiscretizeOptions {
    std::int64_t epoch = 0;              // start of interval 1
    std::uint32_t interval_minutes = 5;
    std::uint32_t intervals = 0;         // I
    LabelDictionary labels = LabelDictionary::default_fleet();
    std::uint8_t fill_id = 8;            // cells no segment overlaps
};

struct DiscretizeResult {
    ActivityMatrix matrix;
    std::size_t skipped_records = 0; // records entirely outside the time window
};

/// Buckets segments into the interval grid. Each cell takes the activity
/// with the largest total overlap inside that interval; ties go to the
/// smaller activity id, then to the activity whose contributing segment
/// starts earliest, so record order never matters. Objects become rows in
/// first-seen order.
DiscretizeResult discretize(std::span<const SegmentRecord> records,
                            const DiscretizeOptions& options);

/// Inverse of ingestion for generated data: run-length encodes the matrix
/// back into `object,start,end,label` rows.
void write_segments_csv(std::ostream& out, const ActivityMatrix& m);

} // namespace semantrix
