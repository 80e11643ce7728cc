#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hypoineq/config.hpp"
#include "hypoineq/suites.hpp"

namespace hypoineq {

inline constexpr const char* kVersion = "0.1.0";

struct Report {
    std::string version = kVersion;
    std::uint64_t seed = 0;
    std::string config_echo;
    std::vector<std::string> suites;
    std::vector<Entry> entries;  // ordered by job index, then by position within the job
    std::vector<std::pair<std::string, double>> wall_times;  // seconds per "suite/job"
    double total_seconds = 0.0;

    bool passed() const;
    /// Asserted entries that failed.
    std::vector<const Entry*> failures() const;
};

/// Seed of one job: FNV-1a over the base seed and the job name.
std::uint64_t job_seed(std::uint64_t base, const std::string& job_name);

/// Runs every job of the configured suites on cfg.jobs worker threads. A job
/// that throws becomes one failing entry carrying the message.
Report run_suites(const SuiteConfig& cfg);

/// Report JSON. Wall times are omitted when `with_timing` is false; the rest
/// is deterministic given the config and seed.
std::string report_json(const Report& r, bool with_timing = true);
std::string suite_csv(const Report& r, const std::string& suite);

/// Writes report.json and one <suite>.csv per suite into `dir`, creating it.
void write_report(const Report& r, const std::string& dir);

}  // namespace hypoineq
