#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypoineq/inequalities.hpp"

namespace hypoineq {

struct ConfigValue {
    std::string text;
    int line = 0;
    int column = 0;  // column of the first character of the value
    int key_column = 0;
};

/// A "[name label]" block of "key = value" lines.
struct ConfigSection {
    std::string name;
    std::string label;
    int line = 0;
    std::vector<std::pair<std::string, ConfigValue>> entries;

    const ConfigValue* find(const std::string& key) const;
    void set(const std::string& key, const std::string& value);
};

/// Flat sectioned key = value text. '#' and ';' start comment lines.
struct Config {
    std::vector<ConfigSection> sections;

    ConfigSection* find(const std::string& name, const std::string& label = "");
    const ConfigSection* find(const std::string& name, const std::string& label = "") const;
    /// Canonical text; parsing it yields the same sections and entries.
    std::string text() const;
};

/// Throws ParseError with the line and column of the offending token.
Config parse_config(const std::string& text);

/// One inequality instance declared in an "[instance NAME]" section.
struct InstanceConfig {
    std::string name;
    std::string suite;
    InequalitySpec spec;
    std::string family = "gaussian";
    std::vector<double> theta;
    std::string g_family;
    std::vector<double> g_theta;
    std::optional<double> max_ratio;
};

struct SuiteConfig {
    std::vector<std::string> suites;  // expanded, "all" replaced by every suite
    std::uint64_t seed = 12345;
    int jobs = 1;
    std::string out;
    int spectral_M = 128;
    std::size_t mc_pairs = 400'000;
    std::size_t budget = 40;
    std::vector<InstanceConfig> instances;
    Config raw;

    /// Canonical config text with the effective seed.
    std::string echo() const;
};

/// Validates every key and id; unknown suites, norms, families, theorems or
/// keys, malformed numbers and an empty suite list raise ParseError.
SuiteConfig parse_suite_config(const std::string& text);
SuiteConfig load_suite_config(const std::string& path);

}  // namespace hypoineq
