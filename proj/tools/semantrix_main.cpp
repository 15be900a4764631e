#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "semantrix/bench.hpp"
#include "semantrix/container.hpp"
#include "semantrix/ingest.hpp"
#include "semantrix/synth.hpp"

namespace {

using namespace semantrix;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct DatasetArgs {
    std::string preset;
    std::uint32_t intervals = 0;
    std::uint32_t objects = 20;
    std::uint64_t seed = 0;
};

void add_dataset_options(CLI::App* cmd, DatasetArgs& args) {
    cmd->add_option("--preset", args.preset, "Dataset preset: month, six-months or year");
    cmd->add_option("--intervals", args.intervals, "Explicit interval count (overrides preset)");
    cmd->add_option("--objects", args.objects, "Number of mobile objects")->capture_default_str();
    cmd->add_option("--seed", args.seed, "Generator seed")->capture_default_str();
}

ActivityMatrix generate_dataset(const DatasetArgs& args) {
    GeneratorConfig cfg;
    cfg.num_objects = args.objects;
    cfg.seed = args.seed;
    if (args.intervals > 0) {
        cfg.intervals = args.intervals;
    } else if (!args.preset.empty()) {
        const auto ivls = preset_intervals(args.preset);
        if (!ivls) {
            throw CLI::ValidationError("--preset",
                                       "unknown preset '" + args.preset +
                                           "' (expected month, six-months or year)");
        }
        cfg.intervals = *ivls;
    } else {
        throw CLI::ValidationError("dataset", "need --preset or --intervals");
    }
    return generate(cfg);
}

std::string human_bytes(std::uint64_t b) {
    std::ostringstream os;
    if (b >= 1024 * 1024) {
        os << b << " B (" << b / (1024.0 * 1024.0) << " MiB)";
    } else if (b >= 1024) {
        os << b << " B (" << b / 1024.0 << " KiB)";
    } else {
        os << b << " B";
    }
    return os.str();
}

void print_component_sizes(const AnyWarehouse& wh) {
    const auto& meta = meta_of(wh);
    if (const auto* sx = std::get_if<Semantrix>(&wh)) {
        const auto sizes = sx->component_sizes();
        std::cout << "  B (run starts):    " << human_bytes(sizes.bitvector) << "\n";
        std::cout << "  H (run ids):       " << human_bytes(sizes.runs) << "\n";
        std::cout << "  FM-index:          " << human_bytes(sizes.fm_index) << "\n";
        for (std::size_t a = 0; a < sizes.per_activity_table.size(); ++a) {
            std::cout << "  S_" << a + 1 << " ("
                      << meta.labels.label_of(static_cast<std::uint8_t>(a + 1))
                      << "): " << human_bytes(sizes.per_activity_table[a]) << "\n";
        }
    } else if (std::holds_alternative<NaiveWarehouse>(wh)) {
        std::cout << "  matrix cells:      " << human_bytes(byte_size_of(wh)) << "\n";
    } else {
        const auto& bp = std::get<BaselinePlus>(wh);
        const std::uint64_t os_bytes =
            static_cast<std::uint64_t>(meta.objects) * meta.intervals;
        const std::uint64_t cum_bytes =
            static_cast<std::uint64_t>(meta.activities) * meta.objects * meta.intervals * 4;
        std::cout << "  OS sequence:       " << human_bytes(os_bytes) << "\n";
        std::cout << "  FM-index:          "
                  << human_bytes(bp.byte_size() - os_bytes - cum_bytes) << "\n";
        std::cout << "  cumulative C_a:    " << human_bytes(cum_bytes) << "\n";
    }
    std::cout << "  total:             " << human_bytes(byte_size_of(wh)) << "\n";
}

std::vector<std::uint8_t> parse_pattern_arg(const std::string& arg) {
    std::vector<std::uint8_t> pattern;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const int v = std::stoi(tok);
        if (v < 1 || v > 255) throw std::invalid_argument("pattern activity out of range");
        pattern.push_back(static_cast<std::uint8_t>(v));
    }
    if (pattern.empty()) throw std::invalid_argument("empty pattern");
    return pattern;
}

int run_query(const std::string& file, const std::vector<std::string>& args) {
    if (args.empty()) {
        std::cerr << "usage: query FILE (at OBJ IVL | range OBJ I1 I2 | pattern A1,A2,..."
                  << " | agg ACT J1 J2 I1 I2 | who ACT I1 I2)\n";
        return kExitUsage;
    }
    auto want = [&](std::size_t n) {
        if (args.size() != n + 1) {
            throw std::invalid_argument("query '" + args[0] + "' takes " + std::to_string(n) +
                                        " arguments");
        }
    };
    auto num = [&](std::size_t i) {
        const long v = std::stol(args[i]);
        if (v < 0) throw std::invalid_argument("negative query argument");
        return static_cast<std::uint32_t>(v);
    };

    const AnyWarehouse wh = load_warehouse_file(file);
    const auto& verb = args[0];
    std::visit(
        [&](const auto& s) {
            if (verb == "at") {
                want(2);
                std::cout << static_cast<int>(s.activity_at(num(1), num(2))) << "\n";
            } else if (verb == "range") {
                want(3);
                for (const auto& run : s.activities_in_range(num(1), num(2), num(3))) {
                    std::cout << static_cast<int>(run.activity) << ',' << run.first_interval
                              << ',' << run.last_interval << "\n";
                }
            } else if (verb == "pattern") {
                want(1);
                std::cout << s.pattern_count(parse_pattern_arg(args[1])) << "\n";
            } else if (verb == "agg") {
                want(5);
                std::cout << s.aggregate_count(static_cast<std::uint8_t>(num(1)), num(2), num(3),
                                               num(4), num(5))
                          << "\n";
            } else if (verb == "who") {
                want(3);
                std::cout << s.objects_performing(static_cast<std::uint8_t>(num(1)), num(2),
                                                  num(3))
                          << "\n";
            } else {
                throw std::invalid_argument("unknown query '" + verb + "'");
            }
        },
        wh);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compressed semantic-trajectory warehouse"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a synthetic fleet dataset");
    DatasetArgs gen_args;
    add_dataset_options(gen, gen_args);
    std::string gen_csv;
    gen->add_option("--csv", gen_csv, "Dump the dataset as a segments CSV");

    // build
    auto* build = app.add_subcommand("build", "Build a warehouse container");
    DatasetArgs build_args;
    add_dataset_options(build, build_args);
    std::string build_input, build_out, build_structure_name = "semantrix-plain";
    std::string build_epoch;
    std::uint32_t build_interval_minutes = 5, build_intervals = 0, build_diff_period = 4;
    unsigned build_fm_rate = FmIndex::kDefaultSampleRate;
    int build_fill_id = 8;
    bool build_open_dict = false;
    build->add_option("--input", build_input, "Segments CSV (object,start,end,label)");
    build->add_option("--structure", build_structure_name,
                      "naive | baseline+ | semantrix-plain | semantrix-diff")
        ->capture_default_str();
    build->add_option("--diff-period", build_diff_period, "Row sample period of the diff tables")
        ->capture_default_str();
    build->add_option("--fm-sample-rate", build_fm_rate, "Suffix-array sample rate")
        ->capture_default_str();
    build->add_option("--epoch", build_epoch,
                      "Start of interval 1 (RFC-3339 or epoch seconds; derived when absent)");
    build->add_option("--interval-minutes", build_interval_minutes, "Interval length")
        ->capture_default_str();
    build->add_option("--grid-intervals", build_intervals,
                      "Interval count for CSV input (derived when absent)");
    build->add_flag("--open-dictionary", build_open_dict,
                    "Grow the label dictionary from the data instead of the fixed fleet labels");
    build->add_option("--fill-id", build_fill_id, "Activity id for uncovered intervals")
        ->capture_default_str();
    build->add_option("-o,--out", build_out, "Output container path")->required();

    // query
    auto* query = app.add_subcommand("query", "Answer a query against a container");
    std::string query_file;
    std::vector<std::string> query_args;
    query->add_option("file", query_file, "Container path")->required();
    query->add_option("spec", query_args, "Query: at|range|pattern|agg|who plus arguments")
        ->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Space/time comparison over a generated dataset");
    DatasetArgs bench_args;
    add_dataset_options(bench, bench_args);
    std::vector<std::string> bench_structures = {"naive", "baseline+", "semantrix-plain",
                                                 "semantrix-diff"};
    std::vector<std::string> bench_types = {"individual", "pattern", "aggregate"};
    std::uint32_t bench_queries = 10000, bench_agg_objects = 3, bench_agg_intervals = 12,
                  bench_diff_period = 4;
    std::string bench_out;
    bench->add_option("--structures", bench_structures, "Structures to compare")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--types", bench_types, "Query workloads to time")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--queries", bench_queries, "Queries per type")->capture_default_str();
    bench->add_option("--agg-objects", bench_agg_objects, "Objects per aggregate window")
        ->capture_default_str();
    bench->add_option("--agg-intervals", bench_agg_intervals, "Intervals per aggregate window")
        ->capture_default_str();
    bench->add_option("--diff-period", bench_diff_period, "Diff table sample period")
        ->capture_default_str();
    bench->add_option("-o,--out", bench_out, "Write the CSV report here instead of stdout");

    // inspect
    auto* inspect = app.add_subcommand("inspect", "Show container metadata and sizes");
    std::string inspect_file;
    inspect->add_option("file", inspect_file, "Container path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) {
            const ActivityMatrix m = generate_dataset(gen_args);
            std::cout << "generated " << m.objects() << " objects x " << m.intervals()
                      << " intervals (" << m.cells().size() << " cells)\n";
            if (!gen_csv.empty()) {
                std::ofstream out(gen_csv, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open '" + gen_csv + "' for writing");
                write_segments_csv(out, m);
                std::cout << "wrote " << gen_csv << "\n";
            }
            return kExitOk;
        }

        if (build->parsed()) {
            std::optional<ActivityMatrix> matrix;
            if (!build_input.empty()) {
                const auto records = parse_segments_file(build_input);
                DiscretizeOptions opts;
                opts.interval_minutes = build_interval_minutes;
                opts.labels = build_open_dict ? LabelDictionary::open()
                                              : LabelDictionary::default_fleet();
                if (records.empty()) throw std::runtime_error("input has no segments");
                std::int64_t min_start = records.front().start_ts;
                std::int64_t max_end = records.front().end_ts;
                for (const auto& r : records) {
                    min_start = std::min(min_start, r.start_ts);
                    max_end = std::max(max_end, r.end_ts);
                }
                opts.epoch = build_epoch.empty() ? min_start : parse_timestamp(build_epoch);
                const std::int64_t span = max_end - opts.epoch;
                const std::int64_t ivl_sec = static_cast<std::int64_t>(opts.interval_minutes) * 60;
                opts.intervals = build_intervals > 0
                                     ? build_intervals
                                     : static_cast<std::uint32_t>(
                                           std::max<std::int64_t>(1, (span + ivl_sec - 1) / ivl_sec));
                if (build_open_dict) {
                    // Resolve labels first so the fill id can be validated.
                    for (const auto& r : records) opts.labels.resolve(r.label);
                }
                if (build_fill_id < 1 || build_fill_id > opts.labels.size()) {
                    throw std::runtime_error("--fill-id outside [1..sigma]");
                }
                opts.fill_id = static_cast<std::uint8_t>(build_fill_id);
                auto result = discretize(records, opts);
                if (result.skipped_records > 0) {
                    std::cerr << "warning: skipped " << result.skipped_records
                              << " record(s) outside the time window\n";
                }
                matrix = std::move(result.matrix);
            } else {
                matrix = generate_dataset(build_args);
            }
            const StructureTag tag = parse_tag(build_structure_name);
            const AnyWarehouse wh =
                build_structure(*matrix, tag, build_diff_period, build_fm_rate);
            save_warehouse_file(build_out, wh);
            std::cout << "built " << tag_name(tag) << " over " << matrix->objects() << "x"
                      << matrix->intervals() << "\n";
            print_component_sizes(wh);
            std::cout << "wrote " << build_out << "\n";
            return kExitOk;
        }

        if (query->parsed()) {
            return run_query(query_file, query_args);
        }

        if (bench->parsed()) {
            const ActivityMatrix m = generate_dataset(bench_args);
            BenchConfig cfg;
            cfg.structures.clear();
            for (const auto& s : bench_structures) cfg.structures.push_back(parse_tag(s));
            cfg.query_types = bench_types;
            cfg.queries_per_type = bench_queries;
            cfg.query_seed = bench_args.seed + 1; // dataset and workload draws stay decoupled
            cfg.agg_objects = bench_agg_objects;
            cfg.agg_intervals = bench_agg_intervals;
            cfg.diff_sample_period = bench_diff_period;
            const auto rows = run_bench(m, cfg);
            if (bench_out.empty()) {
                write_bench_csv(std::cout, rows);
            } else {
                std::ofstream out(bench_out, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open '" + bench_out + "' for writing");
                write_bench_csv(out, rows);
            }
            return kExitOk;
        }

        if (inspect->parsed()) {
            const AnyWarehouse wh = load_warehouse_file(inspect_file);
            const auto& meta = meta_of(wh);
            std::cout << "structure:  " << tag_name(tag_of(wh)) << "\n";
            std::cout << "objects:    " << meta.objects << "\n";
            std::cout << "intervals:  " << meta.intervals << " x " << meta.interval_minutes
                      << " min\n";
            std::cout << "epoch:      " << format_timestamp(meta.epoch) << "\n";
            std::cout << "activities: " << static_cast<int>(meta.activities) << "\n";
            for (std::uint8_t a = 1; a <= meta.activities; ++a) {
                std::cout << "  " << static_cast<int>(a) << " = " << meta.labels.label_of(a)
                          << "\n";
            }
            print_component_sizes(wh);
            return kExitOk;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
