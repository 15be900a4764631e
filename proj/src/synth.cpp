#include "semantrix/synth.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace semantrix {

std::optional<std::uint32_t> preset_intervals(std::string_view name) {
    if (name == "month") return kMonthIntervals;
    if (name == "six-months") return kSixMonthIntervals;
    if (name == "year") return kYearIntervals;
    return std::nullopt;
}

std::vector<double> default_transition(std::size_t sigma) {
    if (sigma < 2) throw std::invalid_argument("default_transition: need at least 2 activities");
    std::vector<double> t(sigma * sigma, 0.3 / static_cast<double>(sigma - 1));
    for (std::size_t i = 0; i < sigma; ++i) t[i * sigma + i] = 0.7;
    return t;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t sample_index(std::mt19937_64& rng, const double* weights, std::size_t n) {
    const double u = next_unit(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    return n - 1;
}

void check_distribution(const std::vector<double>& p, std::size_t offset, std::size_t n,
                        const char* what) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (p[offset + i] < 0.0) throw std::invalid_argument(std::string(what) + ": negative weight");
        sum += p[offset + i];
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument(std::string(what) + ": weights do not sum to 1");
    }
}

} // namespace

ActivityMatrix generate(const GeneratorConfig& cfg) {
    if (cfg.num_objects < 1 || cfg.intervals < 1) {
        throw std::invalid_argument("generate: need at least one object and one interval");
    }
    const std::size_t sigma = cfg.labels.size();
    if (sigma < 1) throw std::invalid_argument("generate: empty label dictionary");

    std::vector<double> transition =
        cfg.transition.empty() ? default_transition(sigma) : cfg.transition;
    if (transition.size() != sigma * sigma) {
        throw std::invalid_argument("generate: transition matrix must be sigma x sigma");
    }
    for (std::size_t row = 0; row < sigma; ++row) {
        check_distribution(transition, row * sigma, sigma, "transition row");
    }
    std::vector<double> initial = cfg.initial;
    if (initial.empty()) initial.assign(sigma, 1.0 / static_cast<double>(sigma));
    if (initial.size() != sigma) {
        throw std::invalid_argument("generate: initial distribution must have sigma entries");
    }
    check_distribution(initial, 0, sigma, "initial distribution");

    std::vector<std::uint8_t> cells(static_cast<std::size_t>(cfg.num_objects) * cfg.intervals);
    for (std::uint32_t obj = 0; obj < cfg.num_objects; ++obj) {
        std::mt19937_64 rng(splitmix64(cfg.seed ^ obj));
        std::size_t state = sample_index(rng, initial.data(), sigma);
        std::uint8_t* row = cells.data() + static_cast<std::size_t>(obj) * cfg.intervals;
        row[0] = static_cast<std::uint8_t>(state + 1);
        for (std::uint32_t i = 1; i < cfg.intervals; ++i) {
            state = sample_index(rng, transition.data() + state * sigma, sigma);
            row[i] = static_cast<std::uint8_t>(state + 1);
        }
    }

    WarehouseMeta meta;
    meta.objects = cfg.num_objects;
    meta.intervals = cfg.intervals;
    meta.activities = static_cast<std::uint8_t>(sigma);
    meta.epoch = cfg.epoch;
    meta.interval_minutes = cfg.interval_minutes;
    meta.labels = cfg.labels;
    return ActivityMatrix(std::move(meta), std::move(cells));
}

} // namespace semantrix
