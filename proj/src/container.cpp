#include "semantrix/container.hpp"

#include <fstream>
#include <stdexcept>

namespace semantrix {

std::string_view tag_name(StructureTag tag) {
    switch (tag) {
        case StructureTag::Naive: return "naive";
        case StructureTag::BaselinePlus: return "baseline+";
        case StructureTag::SemantrixPlain: return "semantrix-plain";
        case StructureTag::SemantrixDiff: return "semantrix-diff";
    }
    throw std::invalid_argument("unknown structure tag");
}

StructureTag parse_tag(std::string_view name) {
    if (name == "naive") return StructureTag::Naive;
    if (name == "baseline+") return StructureTag::BaselinePlus;
    if (name == "semantrix-plain") return StructureTag::SemantrixPlain;
    if (name == "semantrix-diff") return StructureTag::SemantrixDiff;
    throw std::invalid_argument("unknown structure '" + std::string(name) +
                                "' (expected naive, baseline+, semantrix-plain or semantrix-diff)");
}

StructureTag tag_of(const AnyWarehouse& w) {
    return std::visit(
        [](const auto& s) -> StructureTag {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, NaiveWarehouse>) {
                return StructureTag::Naive;
            } else if constexpr (std::is_same_v<T, BaselinePlus>) {
                return StructureTag::BaselinePlus;
            } else {
                return s.aggregation_kind() == AggregationKind::Plain
                           ? StructureTag::SemantrixPlain
                           : StructureTag::SemantrixDiff;
            }
        },
        w);
}

const WarehouseMeta& meta_of(const AnyWarehouse& w) {
    return std::visit([](const auto& s) -> const WarehouseMeta& { return s.meta(); }, w);
}

std::uint64_t byte_size_of(const AnyWarehouse& w) {
    return std::visit([](const auto& s) { return s.byte_size(); }, w);
}

AnyWarehouse build_structure(const ActivityMatrix& m, StructureTag tag,
                             std::uint32_t diff_sample_period, unsigned fm_sample_rate) {
    switch (tag) {
        case StructureTag::Naive:
            return NaiveWarehouse(m);
        case StructureTag::BaselinePlus:
            return BaselinePlus(m, fm_sample_rate);
        case StructureTag::SemantrixPlain:
            return Semantrix(m, {AggregationKind::Plain, diff_sample_period, fm_sample_rate});
        case StructureTag::SemantrixDiff:
            return Semantrix(m, {AggregationKind::Diff, diff_sample_period, fm_sample_rate});
    }
    throw std::invalid_argument("unknown structure tag");
}

void save_warehouse(std::ostream& out, const AnyWarehouse& w) {
    out.write("SMTX", 4);
    io::write_u16(out, kContainerVersion);
    io::write_u8(out, static_cast<std::uint8_t>(tag_of(w)));
    meta_of(w).save(out);
    std::visit([&](const auto& s) { s.save(out); }, w);
    if (!out) throw std::runtime_error("container: write failed");
}

AnyWarehouse load_warehouse(std::istream& in) {
    char magic[4];
    io::read_bytes(in, magic, 4);
    if (std::string_view(magic, 4) != "SMTX") {
        throw std::runtime_error("container: bad magic (not a SMTX file)");
    }
    const std::uint16_t version = io::read_u16(in);
    if (version != kContainerVersion) {
        throw std::runtime_error("container: unsupported format version " +
                                 std::to_string(version));
    }
    const auto raw_tag = io::read_u8(in);
    if (raw_tag > static_cast<std::uint8_t>(StructureTag::SemantrixDiff)) {
        throw std::runtime_error("container: unknown structure tag " + std::to_string(raw_tag));
    }
    const auto tag = static_cast<StructureTag>(raw_tag);
    WarehouseMeta meta = WarehouseMeta::load(in);
    switch (tag) {
        case StructureTag::Naive:
            return NaiveWarehouse::load(in, std::move(meta));
        case StructureTag::BaselinePlus:
            return BaselinePlus::load(in, std::move(meta));
        case StructureTag::SemantrixPlain:
        case StructureTag::SemantrixDiff:
            return Semantrix::load(in, std::move(meta));
    }
    throw std::runtime_error("container: unreachable tag");
}

void save_warehouse_file(const std::string& path, const AnyWarehouse& w) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    save_warehouse(out, w);
}

AnyWarehouse load_warehouse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return load_warehouse(in);
}

} // namespace semantrix
