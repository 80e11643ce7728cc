#include "hypoineq/report.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "hypoineq/errors.hpp"

namespace hypoineq {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json entry_json(const Entry& e) {
    ordered_json j;
    j["suite"] = e.suite;
    j["name"] = e.name;
    j["lhs"] = number(e.lhs);
    j["rhs"] = number(e.rhs);
    j["ratio"] = number(e.ratio);
    j["abs_error"] = number(e.abs_error);
    j["method"] = e.method;
    j["seed"] = e.seed;
    j["asserted"] = e.asserted;
    j["pass"] = e.pass;
    j["envelope"] = e.envelope;
    if (!e.formula.empty()) j["formula"] = e.formula;
    ordered_json d = ordered_json::object();
    for (const auto& [k, v] : e.details) d[k] = number(v);
    j["details"] = d;
    if (!e.note.empty()) j["note"] = e.note;
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

bool Report::passed() const { return failures().empty(); }

std::vector<const Entry*> Report::failures() const {
    std::vector<const Entry*> out;
    for (const auto& e : entries)
        if (e.asserted && !e.pass) out.push_back(&e);
    return out;
}

std::uint64_t job_seed(std::uint64_t base, const std::string& job_name) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](unsigned char c) {
        h ^= c;
        h *= 1099511628211ull;
    };
    for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(base >> (8 * i)));
    for (char c : job_name) mix(static_cast<unsigned char>(c));
    return h;
}

Report run_suites(const SuiteConfig& cfg) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    Report rep;
    rep.seed = cfg.seed;
    rep.config_echo = cfg.echo();
    rep.suites = cfg.suites;

    std::vector<Job> jobs;
    for (const auto& s : cfg.suites) {
        auto js = suite_jobs(s, cfg);
        jobs.insert(jobs.end(), std::make_move_iterator(js.begin()), std::make_move_iterator(js.end()));
    }
    std::vector<std::vector<Entry>> results(jobs.size());
    std::vector<double> seconds(jobs.size(), 0.0);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const auto& job = jobs[i];
            JobContext ctx;
            ctx.seed = job_seed(cfg.seed, job.suite + "/" + job.name);
            ctx.spectral_M = cfg.spectral_M;
            ctx.mc_pairs = cfg.mc_pairs;
            ctx.budget = cfg.budget;
            const auto t0 = clock::now();
            try {
                results[i] = job.run(ctx);
            } catch (const std::exception& ex) {
                Entry e;
                e.suite = job.suite;
                e.name = job.name;
                e.method = "none";
                e.seed = ctx.seed;
                e.pass = false;
                e.envelope = "job completes";
                e.note = std::string("error: ") + ex.what();
                results[i] = {e};
            }
            seconds[i] = std::chrono::duration<double>(clock::now() - t0).count();
        }
    };
    const int k = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(jobs.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < k; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        rep.entries.insert(rep.entries.end(), results[i].begin(), results[i].end());
        rep.wall_times.emplace_back(jobs[i].suite + "/" + jobs[i].name, seconds[i]);
    }
    rep.total_seconds = std::chrono::duration<double>(clock::now() - start).count();
    return rep;
}

std::string report_json(const Report& r, bool with_timing) {
    ordered_json j;
    j["tool"] = "hypoineq";
    j["version"] = r.version;
    j["seed"] = r.seed;
    j["config"] = r.config_echo;
    j["suites"] = r.suites;
    ordered_json entries = ordered_json::array();
    ordered_json consts = ordered_json::array();
    for (const auto& e : r.entries) {
        entries.push_back(entry_json(e));
        if (!e.formula.empty()) {
            ordered_json c;
            c["name"] = e.name;
            c["value"] = number(e.lhs);
            c["formula"] = e.formula;
            ordered_json in = ordered_json::object();
            for (const auto& [k, v] : e.details) in[k] = number(v);
            c["inputs"] = in;
            consts.push_back(c);
        }
    }
    j["entries"] = entries;
    j["constants"] = consts;
    const auto fails = r.failures();
    j["passed"] = fails.empty();
    ordered_json f = ordered_json::array();
    for (const auto* e : fails) f.push_back(e->suite + "/" + e->name);
    j["failures"] = f;
    if (with_timing) {
        ordered_json w = ordered_json::object();
        for (const auto& [k, v] : r.wall_times) w[k] = v;
        j["wall_times"] = w;
        j["total_seconds"] = r.total_seconds;
    }
    return j.dump(2) + "\n";
}

std::string suite_csv(const Report& r, const std::string& suite) {
    std::ostringstream out;
    out << "suite,name,lhs,rhs,ratio,abs_error,method,seed,asserted,pass,envelope\n";
    for (const auto& e : r.entries) {
        if (e.suite != suite) continue;
        out << csv_field(e.suite) << ',' << csv_field(e.name) << ',' << g17(e.lhs) << ',' << g17(e.rhs) << ','
            << g17(e.ratio) << ',' << g17(e.abs_error) << ',' << csv_field(e.method) << ',' << e.seed << ','
            << (e.asserted ? 1 : 0) << ',' << (e.pass ? 1 : 0) << ',' << csv_field(e.envelope) << '\n';
    }
    return out.str();
}

void write_report(const Report& r, const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path root(dir.empty() ? "." : dir);
    fs::create_directories(root);
    auto write = [](const fs::path& p, const std::string& text) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw InvalidArgument("cannot write '" + p.string() + "'");
        out << text;
    };
    write(root / "report.json", report_json(r));
    for (const auto& s : r.suites) write(root / (s + ".csv"), suite_csv(r, s));
}

}  // namespace hypoineq
