#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "semantrix/activity_matrix.hpp"

namespace semantrix {

/// Dataset sizes of the truck-fleet evaluation: 5-minute intervals, 8-hour
/// working days, 7-day weeks, 4-week months.
inline constexpr std::uint32_t kMonthIntervals = 12 * 8 * 7 * 4;      // 2688
inline constexpr std::uint32_t kSixMonthIntervals = kMonthIntervals * 6; // 16128
inline constexpr std::uint32_t kYearIntervals = kMonthIntervals * 12;    // 32256

/// Interval count for "month" / "six-months" / "year", if the name matches.
std::optional<std::uint32_t> preset_intervals(std::string_view name);

/// Row-stochastic transition matrix with a strong self-loop (0.7) and the
/// remaining mass spread evenly, so runs last a few intervals on average.
std::vector<double> default_transition(std::size_t sigma = 9);

struct GeneratorConfig {
    std::uint32_t num_objects = 20;
    std::uint32_t intervals = kMonthIntervals;
    std::uint64_t seed = 0;
    std::vector<double> transition;      // sigma x sigma row-major; default_transition() if empty
    std::vector<double> initial;         // length sigma; uniform if empty
    std::int64_t epoch = 1735689600;     // 2025-01-01T00:00:00Z
    std::uint32_t interval_minutes = 5;
    LabelDictionary labels = LabelDictionary::default_fleet();
};

/// Samples each object's row as an independent first-order Markov chain.
/// Fully deterministic: row j draws from mt19937_64 seeded with
/// splitmix64(seed ^ j), and uniform doubles are derived by the fixed
/// (x >> 11) * 2^-53 mapping, so identical configs give identical matrices
/// on every platform.
ActivityMatrix generate(const GeneratorConfig& cfg);

} // namespace semantrix
