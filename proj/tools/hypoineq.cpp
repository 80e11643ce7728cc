#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>

#include "hypoineq/config.hpp"
#include "hypoineq/errors.hpp"
#include "hypoineq/report.hpp"
#include "hypoineq/trudinger_moser.hpp"

using namespace hypoineq;

namespace {

constexpr int kOk = 0;
constexpr int kAssertion = 1;
constexpr int kParse = 2;

int cmd_run(const std::string& path, const std::optional<std::string>& out, const std::optional<std::uint64_t>& seed,
            const std::optional<int>& jobs) {
    SuiteConfig cfg;
    try {
        cfg = load_suite_config(path);
    } catch (const ParseError& e) {
        std::cerr << path << ": " << e.what() << "\n";
        return kParse;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kParse;
    }
    if (seed) cfg.seed = *seed;
    if (jobs) cfg.jobs = *jobs;
    const std::string dir = out ? *out : (cfg.out.empty() ? "report" : cfg.out);

    const Report rep = run_suites(cfg);
    write_report(rep, dir);
    for (const auto& e : rep.entries)
        std::printf("%-4s %-12s %-32s ratio=%.6g\n", !e.asserted ? "info" : (e.pass ? "ok" : "FAIL"), e.suite.c_str(),
                    e.name.c_str(), e.ratio);
    const auto fails = rep.failures();
    std::printf("%zu entries, %zu failed, %.1f s, report in %s\n", rep.entries.size(), fails.size(),
                rep.total_seconds, dir.c_str());
    if (fails.empty()) return kOk;
    std::cerr << "failing entries:\n";
    for (const auto* e : fails)
        std::cerr << "  " << e->suite << "/" << e->name << ": " << e->envelope
                  << (e->note.empty() ? "" : " [" + e->note + "]") << "\n";
    return kAssertion;
}

int cmd_list() {
    for (const auto& s : list_suites()) std::printf("%-12s %s\n", s.name.c_str(), s.description.c_str());
    return kOk;
}

int cmd_alpha_q(const std::string& group, const std::string& norm) {
    QuasiNorm n = QuasiNorm::euclidean(HomogeneousGroup::euclidean(2));
    try {
        n = parse_norm_id(norm.find(':') != std::string::npos ? norm : group + ":" + norm);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kParse;
    }
    try {
        const auto m = alpha_Q(n);
        std::printf("norm    %s\nQ       %.17g\nc_Q     %.17g\nalpha_Q %.17g\n", n.id().c_str(), m.Q, m.c_Q, m.alpha_Q);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kAssertion;
    }
    return kOk;
}

int cmd_htype(int k, int l) {
    try {
        std::printf("Q       %d\nalpha_Q %.17g\n", k + 2 * l, alpha_Q_htype(k, l));
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kParse;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks of Hardy, HLS, CKN and Trudinger-Moser inequalities on homogeneous groups"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run the suites of a config file");
    std::string config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    run->add_option("config", config, "config file")->required();
    run->add_option("--out", out, "report directory");
    run->add_option("--seed", seed, "base seed");
    run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* list = app.add_subcommand("list", "list the registered suites");

    auto* constant = app.add_subcommand("constant", "print a sharp Moser constant");
    constant->require_subcommand(1);
    auto* aq = constant->add_subcommand("alpha-q", "alpha_Q by quadrature of |grad_H N|^Q");
    std::string group = "R:2", norm = "euclidean";
    aq->add_option("--group", group, "group id, e.g. R:2 or H:1")->required();
    aq->add_option("--norm", norm, "norm id: euclidean, max or kaplan")->required();
    auto* ht = constant->add_subcommand("htype", "alpha_Q of an H-type group in closed form");
    int k = 0, l = 0;
    ht->add_option("--k", k, "dimension of the first layer")->required();
    ht->add_option("--l", l, "dimension of the centre")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    if (*run) return cmd_run(config, out, seed, jobs);
    if (*list) return cmd_list();
    if (*aq) return cmd_alpha_q(group, norm);
    if (*ht) return cmd_htype(k, l);
    return kParse;
}
