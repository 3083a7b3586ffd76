#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptthermo/bistate.hpp"
#include "ptthermo/pt_hamiltonian.hpp"

namespace ptthermo {

struct RunConfig {
    double r = 0.0;
    double s = 1.0;
    double g = 0.5;
    double omega_c = 2.0;
    int d_bath = 15;
    double temperature = 10.0;
    InitialState initial_state = InitialState::Excited;
    double t_max = 20.0;
    int n_steps = 400;
    std::string output_dir = "out";
    PhiConvention phi_convention = PhiConvention::Pi;

    PTParams params() const;
    /// n_steps >= 2, t_max > 0; physics limits are left to the library.
    void validate() const;
};

/// JSON object with RunConfig field names. Unknown keys and type mismatches
/// throw ConfigError; absent keys keep their defaults.
RunConfig config_from_json_text(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);
std::string config_to_json_text(const RunConfig& cfg);

/// "key=value" using the same field names as the JSON file.
void apply_override(RunConfig& cfg, std::string_view assignment);

/// %.12g, with negative zero printed as 0.
std::string format_number(double x);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// ',' separated, '\n' terminated, header first.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
std::string to_csv_text(const CsvTable& table);

struct Check {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct RunReport {
    std::string command;
    std::filesystem::path out_dir;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    bool all_passed() const;
};

/// Each command writes run.csv and manifest.json into cfg.output_dir.
/// Library errors propagate after a manifest recording the failure has been
/// written.
RunReport cmd_closed_ergotropy(const RunConfig& cfg);
RunReport cmd_open_ergotropy(const RunConfig& cfg, int threads = 0);
RunReport cmd_laws(const RunConfig& cfg, int threads = 0);

/// Temperatures must be positive and descending; run.csv holds the
/// (temperature, max_entropy) table.
RunReport cmd_third_law(const RunConfig& cfg, std::span<const double> temperatures,
                        int threads = 0);

struct SweepEntry {
    double r = 0.0;
    bool ok = false; // run completed and every check passed
    std::string status;
    double initial_ergotropy = 0.0;
    double min_sigma = 0.0;
    double max_residual = 0.0;
};

struct SweepReport {
    std::filesystem::path out_dir;
    std::vector<SweepEntry> entries;
    bool all_passed() const;
};

/// One open-ergotropy (run.csv) + laws (laws.csv) run per r in
/// <output_dir>/r_<r>/, executed on up to `workers` threads, then sweep.csv. A failing r is recorded and the
/// remaining runs proceed. Throws ConfigError("empty sweep") for no r values.
SweepReport cmd_sweep(const RunConfig& base, std::span<const double> r_values, int workers = 0);

} // namespace ptthermo
