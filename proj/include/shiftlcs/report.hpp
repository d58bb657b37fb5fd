#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "shiftlcs/montecarlo.hpp"

namespace shiftlcs {

inline constexpr int kConfigVersion = 1;

/// A config plus an optional list of shifts; SHIFT, TAILS and BLOCKSUM run
/// once per shift when the list is nonempty.
struct ExperimentPlan {
    ExperimentConfig config;
    std::vector<std::size_t> shifts;

    std::vector<std::size_t> effective_shifts() const;
};

/// Strict reader: requires "version": 1 and rejects unknown keys. Accepts a
/// summary document too and reads its embedded "config".
ExperimentPlan plan_from_json(const nlohmann::json& j);
/// Stable key order. Omits "threads", which never affects results.
nlohmann::ordered_json plan_to_json(const ExperimentPlan& plan);

/// Validates the config once per shift, before anything runs.
void validate(const ExperimentPlan& plan);

nlohmann::ordered_json stats_to_json(const SummaryStats& stats);

struct SimulationOutput {
    nlohmann::ordered_json summary;
    /// RFC 4180 style, LF line endings.
    std::string csv;
    /// (file name, contents) of plain numeric series.
    std::vector<std::pair<std::string, std::string>> plots;
    /// Internal assertions that failed (SHIFT floor, block-sum domination).
    std::vector<std::string> failures;
};

SimulationOutput simulate(const ExperimentPlan& plan);

/// Shortest round-trip decimal form.
std::string format_double(double x);

}  // namespace shiftlcs
