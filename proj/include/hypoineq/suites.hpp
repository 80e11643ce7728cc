#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace hypoineq {

struct SuiteConfig;

/// One row of a report. Every entry carries lhs / rhs / ratio with an error
/// and the method; value checks store the computed value in lhs and the
/// reference in rhs.
struct Entry {
    std::string suite;
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double abs_error = 0.0;
    std::string method;
    std::uint64_t seed = 0;
    bool asserted = true;  // false for report-only statistics
    bool pass = true;
    std::string envelope;  // the assertion, in words
    std::string formula;   // set for constants
    std::vector<std::pair<std::string, double>> details;
    std::string note;
};

struct SuiteInfo {
    std::string name;
    std::string description;
};

/// Registered suites in a stable order, "all" last.
std::vector<SuiteInfo> list_suites();
std::vector<std::string> suite_names();

struct JobContext {
    std::uint64_t seed = 12345;
    int spectral_M = 128;
    std::size_t mc_pairs = 400'000;
    std::size_t budget = 40;
};

struct Job {
    std::string suite;
    std::string name;
    std::function<std::vector<Entry>(const JobContext&)> run;
};

/// The jobs of one suite, built-in entries first, then the config's
/// instances assigned to that suite.
std::vector<Job> suite_jobs(const std::string& suite, const SuiteConfig& cfg);

}  // namespace hypoineq
