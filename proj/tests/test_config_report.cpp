#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>

#include "hypoineq/config.hpp"
#include "hypoineq/errors.hpp"
#include "hypoineq/report.hpp"

using namespace hypoineq;
using nlohmann::json;

namespace {

int parse_line(const std::string& text) {
    try {
        parse_suite_config(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

std::pair<int, int> parse_position(const std::string& text) {
    try {
        parse_suite_config(text);
    } catch (const ParseError& e) {
        return {e.line(), e.column()};
    }
    return {0, 0};
}

const char* kInstance = R"([run]
suites = hardy
seed = 7

[instance hs-gauss]
suite = hardy
theorem = hardy-sobolev
norm = R:3:euclidean
family = gaussian
theta = 1.0
p = 2
q = 2
a = 1
b = 2
max_ratio = 1.2
)";

}  // namespace

TEST_CASE("config parsing") {
    const auto cfg = parse_suite_config(kInstance);
    CHECK(cfg.suites == std::vector<std::string>{"hardy"});
    CHECK(cfg.seed == 7);
    CHECK(cfg.jobs == 1);
    REQUIRE(cfg.instances.size() == 1);
    const auto& ic = cfg.instances[0];
    CHECK(ic.name == "hs-gauss");
    CHECK(ic.spec.theorem == TheoremId::HardySobolev);
    CHECK(ic.spec.get("b") == 2.0);
    CHECK(ic.theta == std::vector<double>{1.0});
    CHECK(ic.max_ratio.value() == 1.2);

    const auto all = parse_suite_config("[run]\nsuites = all, tm\n");
    CHECK(all.suites.size() == suite_names().size() - 1);
    CHECK(std::find(all.suites.begin(), all.suites.end(), "all") == all.suites.end());

    const auto commented = parse_suite_config("# comment\n; another\n[run]\n  suites = tm  \njobs = 3\n");
    CHECK(commented.suites == std::vector<std::string>{"tm"});
    CHECK(commented.jobs == 3);
}

TEST_CASE("config errors carry line and column") {
    CHECK(parse_line("[run]\nsuites = \n") == 2);
    CHECK(parse_line("[run]\nsuites = ,\n") == 2);
    CHECK(parse_position("[run]\nsuites = weights, nope\n") == std::pair{2, 19});
    CHECK(parse_position("[run]\nsuites = tm\nseed = abc\n") == std::pair{3, 8});
    CHECK(parse_position("[run]\nsuites = tm\ncolour = red\n") == std::pair{3, 1});
    CHECK(parse_position("[run\nsuites = tm\n") == std::pair{1, 5});
    CHECK(parse_line("suites = tm\n") == 1);
    CHECK(parse_line("[run]\njobs = 2\n") == 1);
    CHECK(parse_line("[run]\nsuites = tm\njobs = 0\n") == 3);
    CHECK(parse_line("[run]\nsuites = tm\nsuites = gn\n") == 3);
    CHECK(parse_line("[run]\nsuites = tm\n[extra]\n") == 3);
    CHECK(parse_line("[run]\nsuites = tm\nno equals sign\n") == 3);

    std::string bad = kInstance;
    bad.replace(bad.find("gaussian"), 8, "lorentzian");
    CHECK(parse_line(bad) == 9);
    bad = kInstance;
    bad.replace(bad.find("R:3:euclidean"), 13, "X:3:euclidean");
    CHECK(parse_line(bad) == 8);
    bad = kInstance;
    bad.replace(bad.find("suite = hardy"), 13, "suite = all");
    CHECK(parse_line(bad) == 6);
    CHECK(parse_line("[run]\nsuites = hardy\n[instance x]\nsuite = hardy\n") == 3);

    try {
        parse_suite_config("[run]\nsuites = nope\n");
        FAIL("no exception");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("config echo round-trips") {
    auto cfg = parse_suite_config(kInstance);
    cfg.seed = 99;
    const auto again = parse_suite_config(cfg.echo());
    CHECK(again.seed == 99);
    CHECK(again.suites == cfg.suites);
    REQUIRE(again.instances.size() == 1);
    CHECK(again.instances[0].spec.params == cfg.instances[0].spec.params);
    CHECK(parse_config(again.raw.text()).text() == again.raw.text());
}

TEST_CASE("suite registry") {
    const auto s = list_suites();
    CHECK(s.size() >= 8);
    CHECK(s.back().name == "all");
    for (const auto& info : s) CHECK_FALSE(info.description.empty());
    const auto names = suite_names();
    CHECK(std::find(names.begin(), names.end(), "tm") != names.end());
    CHECK_THROWS_AS(suite_jobs("nope", SuiteConfig{}), InvalidArgument);
}

TEST_CASE("job seeds") {
    CHECK(job_seed(1, "tm/alpha") == job_seed(1, "tm/alpha"));
    CHECK(job_seed(1, "tm/alpha") != job_seed(2, "tm/alpha"));
    CHECK(job_seed(1, "tm/alpha") != job_seed(1, "tm/beta"));
}

TEST_CASE("running a suite: determinism, schema and files") {
    auto cfg = parse_suite_config("[run]\nsuites = weights\njobs = 3\n");
    const auto a = run_suites(cfg);
    CHECK(a.passed());
    CHECK(a.failures().empty());
    CHECK_FALSE(a.entries.empty());
    cfg.jobs = 1;
    const auto b = run_suites(cfg);
    CHECK(report_json(a, false) == report_json(b, false));

    const auto j = json::parse(report_json(a));
    CHECK(j["tool"] == "hypoineq");
    CHECK(j["version"] == kVersion);
    CHECK(j["passed"] == true);
    CHECK(j.contains("wall_times"));
    CHECK_FALSE(json::parse(report_json(a, false)).contains("wall_times"));
    for (const auto& e : j["entries"])
        for (const char* key : {"suite", "name", "lhs", "rhs", "ratio", "abs_error", "method", "seed", "pass"})
            CHECK(e.contains(key));

    const auto csv = suite_csv(a, "weights");
    CHECK(csv.rfind("suite,name,lhs,rhs,ratio,abs_error,method,seed,asserted,pass,envelope\n", 0) == 0);

    const auto dir = std::filesystem::temp_directory_path() / "hypoineq_report_test";
    std::filesystem::remove_all(dir);
    write_report(a, dir.string());
    CHECK(std::filesystem::exists(dir / "report.json"));
    CHECK(std::filesystem::exists(dir / "weights.csv"));
    std::ifstream in(dir / "report.json");
    CHECK(json::parse(in)["seed"] == a.seed);
    std::filesystem::remove_all(dir);
}

TEST_CASE("instances and failing jobs") {
    const auto ok = run_suites(parse_suite_config(kInstance));
    const Entry* inst = nullptr;
    for (const auto& e : ok.entries)
        if (e.name == "instance-hs-gauss") inst = &e;
    REQUIRE(inst != nullptr);
    CHECK(inst->pass);
    CHECK(inst->ratio == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-3));

    // An inadmissible instance fails without stopping the run.
    std::string text = kInstance;
    text.replace(text.find("b = 2"), 5, "b = 1");
    text.replace(text.find("suites = hardy"), 14, "suites = kernels");
    text.replace(text.find("suite = hardy"), 13, "suite = kernels");
    const auto bad = run_suites(parse_suite_config(text));
    CHECK_FALSE(bad.passed());
    REQUIRE(bad.failures().size() == 1);
    CHECK(bad.failures()[0]->name.find("hs-gauss") != std::string::npos);
    std::set<std::string> others;
    for (const auto& e : bad.entries)
        if (e.pass) others.insert(e.name);
    CHECK(others.size() + 1 == bad.entries.size());
}
