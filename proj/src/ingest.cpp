#include "semantrix/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace semantrix {

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date (Howard Hinnant's
// days_from_civil).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

unsigned parse_fixed(std::string_view s, std::size_t pos, std::size_t len) {
    unsigned v = 0;
    if (pos + len > s.size()) throw std::invalid_argument("timestamp too short");
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            throw std::invalid_argument("expected digit in timestamp");
        }
        v = v * 10 + static_cast<unsigned>(s[i] - '0');
    }
    return v;
}

} // namespace

std::int64_t parse_timestamp(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty timestamp");
    std::string_view body = text;
    const bool negative = body.front() == '-' && all_digits(body.substr(1));
    if (negative || all_digits(body)) {
        std::int64_t v = 0;
        const auto res =
            std::from_chars(body.data(), body.data() + body.size(), v);
        if (res.ec != std::errc{} || res.ptr != body.data() + body.size()) {
            throw std::invalid_argument("bad epoch-seconds timestamp");
        }
        return v;
    }

    // RFC-3339: YYYY-MM-DD 'T' HH:MM:SS [.frac] (Z | +HH:MM | -HH:MM)
    if (text.size() < 19 || text[4] != '-' || text[7] != '-' ||
        (text[10] != 'T' && text[10] != 't' && text[10] != ' ') || text[13] != ':' ||
        text[16] != ':') {
        throw std::invalid_argument("unrecognized timestamp format");
    }
    const unsigned year = parse_fixed(text, 0, 4);
    const unsigned month = parse_fixed(text, 5, 2);
    const unsigned day = parse_fixed(text, 8, 2);
    const unsigned hour = parse_fixed(text, 11, 2);
    const unsigned minute = parse_fixed(text, 14, 2);
    const unsigned second = parse_fixed(text, 17, 2);
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 ||
        second > 60) {
        throw std::invalid_argument("timestamp field out of range");
    }
    std::size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw std::invalid_argument("empty fractional seconds");
    }
    std::int64_t offset = 0;
    if (pos < text.size()) {
        const char c = text[pos];
        if (c == 'Z' || c == 'z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            const unsigned oh = parse_fixed(text, pos + 1, 2);
            if (pos + 3 >= text.size() || text[pos + 3] != ':') {
                throw std::invalid_argument("bad timezone offset");
            }
            const unsigned om = parse_fixed(text, pos + 4, 2);
            offset = static_cast<std::int64_t>(oh) * 3600 + om * 60;
            if (c == '-') offset = -offset;
            pos += 6;
        }
    }
    if (pos != text.size()) throw std::invalid_argument("trailing characters in timestamp");
    const std::int64_t days = days_from_civil(year, month, day);
    return days * 86400 + hour * 3600 + minute * 60 + second - offset;
}

std::string format_timestamp(std::int64_t unix_seconds) {
    std::int64_t days = unix_seconds / 86400;
    std::int64_t rem = unix_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    std::int64_t y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(y), m, d, static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem / 60) % 60), static_cast<long long>(rem % 60));
    return buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    if (quoted) throw CsvError(line_no, "unterminated quote");
    fields.push_back(std::move(field));
    return fields;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

} // namespace

std::vector<SegmentRecord> parse_segments(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw CsvError(1, "missing header");
    if (strip_cr(line) != "object,start,end,label") {
        throw CsvError(1, "expected header 'object,start,end,label'");
    }
    std::vector<SegmentRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line, line_no);
        if (fields.size() != 4) throw CsvError(line_no, "expected 4 fields");
        SegmentRecord rec;
        rec.object_id = fields[0];
        if (rec.object_id.empty()) throw CsvError(line_no, "empty object id");
        try {
            rec.start_ts = parse_timestamp(fields[1]);
            rec.end_ts = parse_timestamp(fields[2]);
        } catch (const std::invalid_argument& e) {
            throw CsvError(line_no, e.what());
        }
        if (rec.start_ts >= rec.end_ts) throw CsvError(line_no, "start must precede end");
        rec.label = fields[3];
        if (rec.label.empty()) throw CsvError(line_no, "empty label");
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<SegmentRecord> parse_segments_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return parse_segments(in);
}

DiscretizeResult discretize(std::span<const SegmentRecord> records,
                            const DiscretizeOptions& options) {
    if (options.interval_minutes < 1) {
        throw std::invalid_argument("discretize: interval length must be positive");
    }
    if (options.intervals < 1) {
        throw std::invalid_argument("discretize: need at least one interval");
    }
    if (records.empty()) {
        throw std::invalid_argument("discretize: no records");
    }

    LabelDictionary labels = options.labels;
    const std::int64_t interval_sec = static_cast<std::int64_t>(options.interval_minutes) * 60;
    const std::int64_t window_end =
        options.epoch + static_cast<std::int64_t>(options.intervals) * interval_sec;

    // Object rows in first-seen order.
    std::unordered_map<std::string, std::uint32_t> object_row;
    std::vector<std::string> object_order;
    for (const auto& rec : records) {
        if (object_row.emplace(rec.object_id, object_order.size()).second) {
            object_order.push_back(rec.object_id);
        }
    }

    std::set<std::tuple<std::string, std::int64_t, std::int64_t, std::string>> seen;
    struct Candidate {
        std::int64_t overlap = 0;
        std::int64_t earliest_start = std::numeric_limits<std::int64_t>::max();
    };
    // (row, interval, activity) -> accumulated overlap + earliest segment start
    std::unordered_map<std::uint64_t, Candidate> candidates;
    std::size_t skipped = 0;

    for (const auto& rec : records) {
        if (rec.start_ts >= rec.end_ts) {
            throw std::invalid_argument("discretize: segment with start >= end for object '" +
                                        rec.object_id + "'");
        }
        if (!seen.emplace(rec.object_id, rec.start_ts, rec.end_ts, rec.label).second) {
            throw std::invalid_argument("discretize: duplicate segment for object '" +
                                        rec.object_id + "'");
        }
        const std::uint8_t activity = labels.resolve(rec.label);
        const std::int64_t lo = std::max(rec.start_ts, options.epoch);
        const std::int64_t hi = std::min(rec.end_ts, window_end);
        if (lo >= hi) {
            ++skipped;
            continue;
        }
        const std::uint32_t row = object_row.at(rec.object_id);
        const auto first_ivl = static_cast<std::uint64_t>((lo - options.epoch) / interval_sec);
        const auto last_ivl = static_cast<std::uint64_t>((hi - 1 - options.epoch) / interval_sec);
        for (std::uint64_t ivl = first_ivl; ivl <= last_ivl; ++ivl) {
            const std::int64_t ivl_start = options.epoch + static_cast<std::int64_t>(ivl) * interval_sec;
            const std::int64_t overlap =
                std::min(hi, ivl_start + interval_sec) - std::max(lo, ivl_start);
            const std::uint64_t key =
                (static_cast<std::uint64_t>(row) * options.intervals + ivl) * 256 + activity;
            auto& cand = candidates[key];
            cand.overlap += overlap;
            cand.earliest_start = std::min(cand.earliest_start, rec.start_ts);
        }
    }

    const std::uint8_t sigma = labels.size();
    if (options.fill_id < 1 || options.fill_id > sigma) {
        throw std::invalid_argument("discretize: fill id outside [1..sigma]");
    }

    // Pick each cell's winner: most overlap, then smallest id, then earliest
    // contributing segment. The choice is a total order over candidates, so
    // the unordered fold cannot depend on iteration order.
    struct Winner {
        std::int64_t overlap = 0;
        std::uint8_t activity = 0;
        std::int64_t start = 0;
    };
    const std::size_t ncells =
        static_cast<std::size_t>(object_order.size()) * options.intervals;
    std::vector<Winner> winners(ncells);
    for (const auto& [key, cand] : candidates) {
        const std::size_t cell = key / 256;
        const auto activity = static_cast<std::uint8_t>(key % 256);
        Winner& w = winners[cell];
        const bool better = w.activity == 0 || cand.overlap > w.overlap ||
                            (cand.overlap == w.overlap &&
                             (activity < w.activity ||
                              (activity == w.activity && cand.earliest_start < w.start)));
        if (better) w = {cand.overlap, activity, cand.earliest_start};
    }

    std::vector<std::uint8_t> cells(ncells);
    for (std::size_t i = 0; i < ncells; ++i) {
        cells[i] = winners[i].activity == 0 ? options.fill_id : winners[i].activity;
    }

    WarehouseMeta meta;
    meta.objects = static_cast<std::uint32_t>(object_order.size());
    meta.intervals = options.intervals;
    meta.activities = sigma;
    meta.epoch = options.epoch;
    meta.interval_minutes = options.interval_minutes;
    meta.labels = std::move(labels);
    return {ActivityMatrix(std::move(meta), std::move(cells)), skipped};
}

void write_segments_csv(std::ostream& out, const ActivityMatrix& m) {
    const auto& meta = m.meta();
    const std::int64_t interval_sec = static_cast<std::int64_t>(meta.interval_minutes) * 60;
    out << "object,start,end,label\n";
    for (std::uint32_t obj = 1; obj <= meta.objects; ++obj) {
        std::uint32_t run_start = 1;
        std::uint8_t current = m.at(obj, 1);
        for (std::uint32_t ivl = 2; ivl <= meta.intervals + 1; ++ivl) {
            if (ivl <= meta.intervals && m.at(obj, ivl) == current) continue;
            const std::int64_t t0 = meta.epoch + (run_start - 1) * interval_sec;
            const std::int64_t t1 = meta.epoch + (ivl - 1) * interval_sec;
            out << "obj" << obj << ',' << format_timestamp(t0) << ',' << format_timestamp(t1)
                << ',' << meta.labels.label_of(current) << '\n';
            if (ivl <= meta.intervals) {
                current = m.at(obj, ivl);
                run_start = ivl;
            }
        }
    }
}

} // namespace semantrix
