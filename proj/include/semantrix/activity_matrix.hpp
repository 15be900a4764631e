#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "semantrix/io.hpp"

namespace semantrix {

/// Bijective activity label <-> id map with ids contiguous from 1.
/// A closed dictionary rejects unknown labels; an open one grows.
class LabelDictionary {
public:
    LabelDictionary() = default;

    explicit LabelDictionary(std::vector<std::string> labels, bool closed = true)
        : names_(std::move(labels)), closed_(closed) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!ids_.emplace(names_[i], static_cast<std::uint8_t>(i + 1)).second) {
                throw std::invalid_argument("LabelDictionary: duplicate label '" + names_[i] + "'");
            }
        }
        if (names_.size() > 254) {
            throw std::invalid_argument("LabelDictionary: more than 254 activities");
        }
    }

    /// The nine activity labels of the truck-fleet setting.
    static LabelDictionary default_fleet() {
        return LabelDictionary({
            "Being at headquarters",
            "Working at a customer place",
            "Normal transit on planned route",
            "Slow transit on planned route",
            "Normal transit out of planned route",
            "Slow transit out of planned route",
            "Taking a break",
            "Undefined/unknown activity",
            "Inactive",
        });
    }

    static LabelDictionary open() { return LabelDictionary({}, false); }

    std::uint8_t size() const { return static_cast<std::uint8_t>(names_.size()); }
    bool closed() const { return closed_; }

    bool contains(const std::string& label) const { return ids_.count(label) != 0; }

    std::uint8_t id_of(const std::string& label) const {
        auto it = ids_.find(label);
        if (it == ids_.end()) {
            throw std::out_of_range("LabelDictionary: unknown label '" + label + "'");
        }
        return it->second;
    }

    /// Resolves a label, growing the dictionary when open.
    std::uint8_t resolve(const std::string& label) {
        auto it = ids_.find(label);
        if (it != ids_.end()) return it->second;
        if (closed_) {
            throw std::out_of_range("LabelDictionary: unknown label '" + label +
                                    "' (dictionary is closed)");
        }
        if (names_.size() >= 254) {
            throw std::invalid_argument("LabelDictionary: more than 254 activities");
        }
        names_.push_back(label);
        const auto id = static_cast<std::uint8_t>(names_.size());
        ids_.emplace(label, id);
        return id;
    }

    const std::string& label_of(std::uint8_t id) const {
        if (id == 0 || id > names_.size()) {
            throw std::out_of_range("LabelDictionary: id out of range");
        }
        return names_[id - 1];
    }

    const std::vector<std::string>& labels() const { return names_; }

    void save(std::ostream& out) const {
        io::write_u8(out, closed_ ? 1 : 0);
        io::write_u32(out, static_cast<std::uint32_t>(names_.size()));
        for (const auto& name : names_) io::write_string(out, name);
    }

    static LabelDictionary load(std::istream& in) {
        const bool closed = io::read_u8(in) != 0;
        const std::uint32_t count = io::read_u32(in);
        std::vector<std::string> names;
        names.reserve(count);
        for (std::uint32_t i = 0; i < count; ++i) names.push_back(io::read_string(in));
        return LabelDictionary(std::move(names), closed);
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint8_t> ids_;
    bool closed_ = true;
};

/// Shared descriptive metadata of one warehouse: matrix dimensions, the
/// time discretization, and the label dictionary.
struct WarehouseMeta {
    std::uint32_t objects = 0;          // r
    std::uint32_t intervals = 0;        // I
    std::uint8_t activities = 0;        // sigma
    std::int64_t epoch = 0;             // unix seconds of interval 1's start
    std::uint32_t interval_minutes = 0; // duration of one interval
    LabelDictionary labels;

    void save(std::ostream& out) const {
        io::write_u32(out, objects);
        io::write_u32(out, intervals);
        io::write_u8(out, activities);
        io::write_i64(out, epoch);
        io::write_u32(out, interval_minutes);
        labels.save(out);
    }

    static WarehouseMeta load(std::istream& in) {
        WarehouseMeta m;
        m.objects = io::read_u32(in);
        m.intervals = io::read_u32(in);
        m.activities = io::read_u8(in);
        m.epoch = io::read_i64(in);
        m.interval_minutes = io::read_u32(in);
        m.labels = LabelDictionary::load(in);
        return m;
    }
};

/// The r x I matrix of activity ids: one row per mobile object, one column
/// per time interval, row-major, one byte per cell. Ground truth for every
/// compressed structure built from it.
class ActivityMatrix {
public:
    ActivityMatrix() = default;

    ActivityMatrix(WarehouseMeta meta, std::vector<std::uint8_t> cells)
        : meta_(std::move(meta)), cells_(std::move(cells)) {
        if (meta_.objects < 1 || meta_.intervals < 1) {
            throw std::invalid_argument("ActivityMatrix: dimensions must be at least 1x1");
        }
        if (cells_.size() !=
            static_cast<std::size_t>(meta_.objects) * meta_.intervals) {
            throw std::invalid_argument("ActivityMatrix: cell count does not match dimensions");
        }
        for (std::uint8_t c : cells_) {
            if (c < 1 || c > meta_.activities) {
                throw std::invalid_argument("ActivityMatrix: cell outside [1..sigma]");
            }
        }
    }

    const WarehouseMeta& meta() const { return meta_; }
    std::uint32_t objects() const { return meta_.objects; }
    std::uint32_t intervals() const { return meta_.intervals; }
    std::uint8_t activities() const { return meta_.activities; }

    /// Cell (object, interval), both 1-based.
    std::uint8_t at(std::uint32_t object, std::uint32_t interval) const {
        check_indices(object, interval);
        return cells_[index(object, interval)];
    }

    const std::vector<std::uint8_t>& cells() const { return cells_; }

    void check_indices(std::uint32_t object, std::uint32_t interval) const {
        if (object < 1 || object > meta_.objects) {
            throw std::out_of_range("ActivityMatrix: object out of range");
        }
        if (interval < 1 || interval > meta_.intervals) {
            throw std::out_of_range("ActivityMatrix: interval out of range");
        }
    }

    std::size_t index(std::uint32_t object, std::uint32_t interval) const {
        return static_cast<std::size_t>(object - 1) * meta_.intervals + (interval - 1);
    }

private:
    WarehouseMeta meta_;
    std::vector<std::uint8_t> cells_;
};

} // namespace semantrix
