#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include "semantrix/baselines.hpp"
#include "semantrix/semantrix.hpp"

namespace semantrix {

enum class StructureTag : std::uint8_t {
    Naive = 0,
    BaselinePlus = 1,
    SemantrixPlain = 2,
    SemantrixDiff = 3,
};

std::string_view tag_name(StructureTag tag);
StructureTag parse_tag(std::string_view name); // throws on unknown names

using AnyWarehouse = std::variant<NaiveWarehouse, BaselinePlus, Semantrix>;

StructureTag tag_of(const AnyWarehouse& w);
const WarehouseMeta& meta_of(const AnyWarehouse& w);
std::uint64_t byte_size_of(const AnyWarehouse& w);

/// Builds the structure a tag names from the ground-truth matrix.
AnyWarehouse build_structure(const ActivityMatrix& m, StructureTag tag,
                             std::uint32_t diff_sample_period = 4,
                             unsigned fm_sample_rate = FmIndex::kDefaultSampleRate);

/// Container layout: magic "SMTX", format version (u16), structure tag
/// (u8), warehouse metadata, then the structure payload. Multi-byte
/// integers are little-endian throughout. Loading rejects unknown magic,
/// versions and tags.
inline constexpr std::uint16_t kContainerVersion = 1;

void save_warehouse(std::ostream& out, const AnyWarehouse& w);
AnyWarehouse load_warehouse(std::istream& in);

void save_warehouse_file(const std::string& path, const AnyWarehouse& w);
AnyWarehouse load_warehouse_file(const std::string& path);

} // namespace semantrix
