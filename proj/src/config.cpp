#include "hypoineq/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "hypoineq/errors.hpp"
#include "hypoineq/suites.hpp"

namespace hypoineq {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::size_t skip_space(const std::string& s, std::size_t i) {
    while (i < s.size() && is_space(s[i])) ++i;
    return i;
}

std::string rtrim(std::string s) {
    while (!s.empty() && is_space(s.back())) s.pop_back();
    return s;
}

bool valid_key(const std::string& k) {
    return !k.empty() && std::all_of(k.begin(), k.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
}

[[noreturn]] void fail(const std::string& what, int line, int column) { throw ParseError(what, line, column); }

double parse_double(const ConfigValue& v, const std::string& key) {
    double out = 0.0;
    const char* b = v.text.data();
    const char* e = b + v.text.size();
    const auto r = std::from_chars(b, e, out);
    if (r.ec != std::errc() || r.ptr != e) fail("'" + key + "' expects a number, got '" + v.text + "'", v.line, v.column);
    return out;
}

long long parse_int(const ConfigValue& v, const std::string& key, long long lo) {
    long long out = 0;
    const char* b = v.text.data();
    const char* e = b + v.text.size();
    const auto r = std::from_chars(b, e, out);
    if (r.ec != std::errc() || r.ptr != e) fail("'" + key + "' expects an integer, got '" + v.text + "'", v.line, v.column);
    if (out < lo) fail("'" + key + "' must be at least " + std::to_string(lo), v.line, v.column);
    return out;
}

// Comma-separated items with the column of each item.
std::vector<std::pair<std::string, int>> split_list(const ConfigValue& v) {
    std::vector<std::pair<std::string, int>> out;
    std::size_t start = 0;
    while (start <= v.text.size()) {
        std::size_t end = v.text.find(',', start);
        if (end == std::string::npos) end = v.text.size();
        const std::size_t a = skip_space(v.text, start);
        const std::string item = rtrim(v.text.substr(a, end - a));
        if (!item.empty()) out.emplace_back(item, v.column + static_cast<int>(a));
        if (end == v.text.size()) break;
        start = end + 1;
    }
    return out;
}

std::vector<double> parse_doubles(const ConfigValue& v, const std::string& key) {
    std::vector<double> out;
    for (const auto& [item, col] : split_list(v)) {
        ConfigValue iv{item, v.line, col, v.key_column};
        out.push_back(parse_double(iv, key));
    }
    return out;
}

void check_keys(const ConfigSection& s, const std::set<std::string>& allowed) {
    for (const auto& [k, v] : s.entries)
        if (!allowed.count(k)) fail("unknown key '" + k + "' in section [" + s.name + "]", v.line, v.key_column);
}

const std::set<std::string> kRunKeys{"suites", "seed", "jobs", "out", "spectral_M", "mc_pairs", "budget"};
const std::set<std::string> kParamKeys{"p", "q", "r", "a", "b", "beta", "lambda", "alpha", "gamma", "delta", "mu"};

InstanceConfig parse_instance(const ConfigSection& s, const std::set<std::string>& suites) {
    std::set<std::string> allowed{"suite", "theorem", "norm", "kernel", "family", "theta", "g_family", "g_theta",
                                  "max_ratio", "spectral_M", "mc_pairs"};
    allowed.insert(kParamKeys.begin(), kParamKeys.end());
    check_keys(s, allowed);
    InstanceConfig ic;
    ic.name = s.label;
    if (ic.name.empty()) fail("[instance] needs a name, as in [instance my-name]", s.line, 1);
    auto need = [&](const std::string& key) -> const ConfigValue& {
        const auto* v = s.find(key);
        if (!v) fail("[instance " + s.label + "] is missing '" + key + "'", s.line, 1);
        return *v;
    };
    const auto& sv = need("suite");
    if (!suites.count(sv.text) || sv.text == "all") fail("unknown suite '" + sv.text + "'", sv.line, sv.column);
    ic.suite = sv.text;
    const auto& tv = need("theorem");
    try {
        ic.spec.theorem = parse_theorem(tv.text);
    } catch (const InvalidArgument& e) {
        fail(e.what(), tv.line, tv.column);
    }
    if (const auto* v = s.find("norm")) {
        try {
            ic.spec.norm = parse_norm_id(v->text);
        } catch (const Error& e) {
            fail(e.what(), v->line, v->column);
        }
    }
    if (const auto* v = s.find("kernel")) {
        try {
            ic.spec.kernel = parse_kernel(v->text);
        } catch (const InvalidArgument& e) {
            fail(e.what(), v->line, v->column);
        }
    }
    const auto families = family_names();
    auto check_family = [&](const ConfigValue& v) {
        if (std::find(families.begin(), families.end(), v.text) == families.end())
            fail("unknown trial family '" + v.text + "'", v.line, v.column);
    };
    if (const auto* v = s.find("family")) {
        check_family(*v);
        ic.family = v->text;
    }
    if (const auto* v = s.find("theta")) ic.theta = parse_doubles(*v, "theta");
    if (const auto* v = s.find("g_family")) {
        check_family(*v);
        ic.g_family = v->text;
    }
    if (const auto* v = s.find("g_theta")) ic.g_theta = parse_doubles(*v, "g_theta");
    if (const auto* v = s.find("max_ratio")) ic.max_ratio = parse_double(*v, "max_ratio");
    if (const auto* v = s.find("spectral_M")) ic.spec.spectral_M = static_cast<int>(parse_int(*v, "spectral_M", 8));
    if (const auto* v = s.find("mc_pairs")) ic.spec.mc_pairs = static_cast<std::size_t>(parse_int(*v, "mc_pairs", 1));
    for (const auto& key : kParamKeys)
        if (const auto* v = s.find(key)) ic.spec.params[key] = parse_double(*v, key);
    return ic;
}

}  // namespace

const ConfigValue* ConfigSection::find(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return &v;
    return nullptr;
}

void ConfigSection::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries)
        if (k == key) {
            v.text = value;
            return;
        }
    entries.emplace_back(key, ConfigValue{value, 0, 0, 0});
}

ConfigSection* Config::find(const std::string& name, const std::string& label) {
    for (auto& s : sections)
        if (s.name == name && s.label == label) return &s;
    return nullptr;
}

const ConfigSection* Config::find(const std::string& name, const std::string& label) const {
    for (const auto& s : sections)
        if (s.name == name && s.label == label) return &s;
    return nullptr;
}

std::string Config::text() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < sections.size(); ++i) {
        const auto& s = sections[i];
        if (i) out << "\n";
        out << "[" << s.name << (s.label.empty() ? "" : " " + s.label) << "]\n";
        for (const auto& [k, v] : s.entries) out << k << " = " << v.text << "\n";
    }
    return out.str();
}

Config parse_config(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t a = skip_space(raw, 0);
        const int col = static_cast<int>(a) + 1;
        if (a == raw.size() || raw[a] == '#' || raw[a] == ';') continue;
        const std::string body = rtrim(raw.substr(a));
        if (body[0] == '[') {
            if (body.back() != ']')
                fail("section header is missing ']'", line, col + static_cast<int>(body.size()));
            std::string inner = body.substr(1, body.size() - 2);
            const std::size_t ia = skip_space(inner, 0);
            inner = rtrim(inner.substr(ia));
            const std::size_t sp = inner.find_first_of(" \t");
            ConfigSection s;
            s.name = inner.substr(0, sp);
            if (sp != std::string::npos) s.label = inner.substr(skip_space(inner, sp));
            s.line = line;
            if (!valid_key(s.name)) fail("invalid section name '" + s.name + "'", line, col + 1);
            if (cfg.find(s.name, s.label))
                fail("duplicate section [" + s.name + (s.label.empty() ? "" : " " + s.label) + "]", line, col);
            cfg.sections.push_back(std::move(s));
            continue;
        }
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'", line, col);
        const std::string key = rtrim(body.substr(0, eq));
        if (!valid_key(key)) fail("invalid key '" + key + "'", line, col);
        if (cfg.sections.empty()) fail("key '" + key + "' appears before any [section]", line, col);
        const std::size_t va = skip_space(body, eq + 1);
        const std::string value = rtrim(body.substr(std::min(va, body.size())));
        const int vcol = col + static_cast<int>(va);
        if (value.empty()) fail("key '" + key + "' has an empty value", line, vcol);
        auto& sec = cfg.sections.back();
        if (sec.find(key)) fail("duplicate key '" + key + "'", line, col);
        sec.entries.emplace_back(key, ConfigValue{value, line, vcol, col});
    }
    return cfg;
}

SuiteConfig parse_suite_config(const std::string& text) {
    SuiteConfig sc;
    sc.raw = parse_config(text);
    const auto names = suite_names();
    const std::set<std::string> known(names.begin(), names.end());

    const ConfigSection* run = sc.raw.find("run");
    if (!run) fail("missing [run] section", 1, 1);
    for (const auto& s : sc.raw.sections)
        if (s.name != "run" && s.name != "instance") fail("unknown section [" + s.name + "]", s.line, 1);
    check_keys(*run, kRunKeys);

    const ConfigValue* sv = run->find("suites");
    if (!sv) fail("[run] has no 'suites' key; the suite list is empty", run->line, 1);
    std::set<std::string> seen;
    for (const auto& [item, col] : split_list(*sv)) {
        if (item == "all") {
            for (const auto& n : names)
                if (n != "all" && seen.insert(n).second) sc.suites.push_back(n);
            continue;
        }
        if (!known.count(item)) fail("unknown suite '" + item + "'", sv->line, col);
        if (seen.insert(item).second) sc.suites.push_back(item);
    }
    if (sc.suites.empty()) fail("the suite list is empty", sv->line, sv->column);

    if (const auto* v = run->find("seed")) sc.seed = static_cast<std::uint64_t>(parse_int(*v, "seed", 0));
    if (const auto* v = run->find("jobs")) sc.jobs = static_cast<int>(parse_int(*v, "jobs", 1));
    if (const auto* v = run->find("out")) sc.out = v->text;
    if (const auto* v = run->find("spectral_M")) sc.spectral_M = static_cast<int>(parse_int(*v, "spectral_M", 8));
    if (const auto* v = run->find("mc_pairs")) sc.mc_pairs = static_cast<std::size_t>(parse_int(*v, "mc_pairs", 1));
    if (const auto* v = run->find("budget")) sc.budget = static_cast<std::size_t>(parse_int(*v, "budget", 1));

    for (const auto& s : sc.raw.sections)
        if (s.name == "instance") sc.instances.push_back(parse_instance(s, known));
    return sc;
}

SuiteConfig load_suite_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_suite_config(buf.str());
}

std::string SuiteConfig::echo() const {
    Config c = raw;
    if (auto* run = c.find("run")) run->set("seed", std::to_string(seed));
    return c.text();
}

}  // namespace hypoineq
