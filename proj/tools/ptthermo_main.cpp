#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptthermo/error.hpp"
#include "ptthermo/experiments.hpp"
#include "ptthermo/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPhysics = 2;

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts)
{
    cmd->add_option("--config", opts.config_path, "JSON run configuration")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_dir, "output directory (overrides output_dir)");
    cmd->add_option("--override", opts.overrides, "key=value, repeatable")
        ->allow_extra_args(false);
    cmd->add_option("--threads", opts.threads, "OpenMP threads, 0 = runtime default")
        ->check(CLI::NonNegativeNumber);
}

ptthermo::RunConfig resolve_config(const CommonOptions& opts)
{
    ptthermo::RunConfig cfg;
    if (!opts.config_path.empty())
        cfg = ptthermo::load_config(opts.config_path);
    for (const auto& item : opts.overrides)
        ptthermo::apply_override(cfg, item);
    if (!opts.out_dir.empty())
        cfg.output_dir = opts.out_dir;
    cfg.validate();
    return cfg;
}

// "0, 0.5,0.95" -> {0, 0.5, 0.95}; blank input gives an empty list
std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos)
            continue;
        const auto last = item.find_last_not_of(" \t");
        const std::string token = item.substr(first, last - first + 1);
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size())
            throw ptthermo::ConfigError("not a number in list: '" + token + "'");
        out.push_back(x);
    }
    return out;
}

int report_run(const ptthermo::RunReport& report)
{
    for (const auto& c : report.checks)
        std::printf("%s  %s  (value %s, threshold %s)%s%s\n", c.passed ? "PASS" : "FAIL",
                    c.name.c_str(), ptthermo::format_number(c.value).c_str(),
                    ptthermo::format_number(c.threshold).c_str(), c.detail.empty() ? "" : ": ",
                    c.detail.c_str());
    for (const auto& note : report.notes)
        std::fprintf(stderr, "note: %s\n", note.c_str());
    std::printf("wrote %s\n", report.out_dir.string().c_str());
    return report.all_passed() ? kExitOk : kExitPhysics;
}

int report_sweep(const ptthermo::SweepReport& sweep)
{
    for (const auto& e : sweep.entries)
        std::printf("r=%s  %s\n", ptthermo::format_number(e.r).c_str(), e.status.c_str());
    std::printf("wrote %s\n", (sweep.out_dir / "sweep.csv").string().c_str());
    return sweep.all_passed() ? kExitOk : kExitPhysics;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Thermodynamics of a PT-symmetric qubit coupled to a bosonic mode"};
    app.set_version_flag("--version", std::string(ptthermo::kVersion));
    app.require_subcommand(1);

    CommonOptions closed_opts, open_opts, laws_opts, sweep_opts, third_opts;
    auto* closed = app.add_subcommand("closed-ergotropy", "ergotropy under the qubit Hamiltonian alone");
    add_common(closed, closed_opts);
    auto* open = app.add_subcommand("open-ergotropy", "ergotropy of the qubit coupled to the bath");
    add_common(open, open_opts);
    auto* laws = app.add_subcommand("laws", "first-law balance, entropy production, entropy");
    add_common(laws, laws_opts);

    auto* sweep = app.add_subcommand("sweep", "open-ergotropy + laws for several r values");
    add_common(sweep, sweep_opts);
    std::string r_list;
    int workers = 0;
    sweep->add_option("--r-values", r_list, "r values, comma separated");
    sweep->add_option("--workers", workers, "concurrent runs, 0 = runtime default")
        ->check(CLI::NonNegativeNumber);

    auto* third = app.add_subcommand("third-law", "max entropy of the qubit versus bath temperature");
    add_common(third, third_opts);
    std::vector<double> temperatures{10.0, 1.0, 0.1, 1e-3};
    third->add_option("--temperatures", temperatures, "descending temperatures, comma separated")
        ->delimiter(',')
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (closed->parsed())
            return report_run(ptthermo::cmd_closed_ergotropy(resolve_config(closed_opts)));
        if (open->parsed())
            return report_run(
                ptthermo::cmd_open_ergotropy(resolve_config(open_opts), open_opts.threads));
        if (laws->parsed())
            return report_run(ptthermo::cmd_laws(resolve_config(laws_opts), laws_opts.threads));
        if (sweep->parsed())
            return report_sweep(
                ptthermo::cmd_sweep(resolve_config(sweep_opts), parse_list(r_list), workers));
        if (third->parsed())
            return report_run(ptthermo::cmd_third_law(resolve_config(third_opts), temperatures,
                                                      third_opts.threads));
    } catch (const ptthermo::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ptthermo::ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ptthermo::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPhysics;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
