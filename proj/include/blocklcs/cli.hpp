#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace blocklcs::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
    kOk = 0,
    kRuntimeError = 1,
    kConfigError = 2,
    kNegativeResult = 3,  ///< optimize: minimum <= 0
    kInfeasible = 4       ///< optimize: no feasible point found
};

/// Everything that determines a run's numbers. Echoed into every JSON output;
/// feeding the echo back through --config reproduces the run.
struct ExperimentConfig {
    std::string command;     ///< gen | lcs | analyze | modify | experiment | optimize | bounds
    std::string experiment;  ///< bias | variance | gamma | events
    int l = 6;
    std::size_t n = 10000;
    std::vector<std::size_t> n_grid{2000, 4000, 8000, 16000};
    std::size_t replicates = 100;
    std::uint64_t seed = 1;
    std::optional<double> q0;     ///< optimize; default (4/9)/(l-1)
    double delta = 0.05;
    std::optional<double> q;      ///< event F threshold; default (4/9)/(l-1) + 0.02
    std::optional<double> gamma;  ///< bounds: supplied gamma_l estimate
    double grid_step = 0.02;
    bool refine = true;
    std::string format = "json";  ///< json | csv
    unsigned jobs = 1;
    std::size_t enum_guard = 40;
    std::size_t pair_budget = 1'000'000;
    std::size_t samples = 2000;
    bool alignment_events = false;
    std::size_t bootstrap = 1000;
    std::string x;  ///< bit strings for lcs, analyze, modify
    std::string y;
    std::optional<std::size_t> grow;
    std::optional<std::size_t> shrink;
    bool show_alignment = false;
};

std::string to_json(const ExperimentConfig& c);
/// Accepts a bare config object or any output document carrying "config".
ExperimentConfig config_from_json(const std::string& text);

/// Parses argv and runs; writes results to `out` (or --output) and
/// diagnostics to `err`. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs an already parsed configuration.
int execute(const ExperimentConfig& config, std::ostream& out, std::ostream& err, const std::string& csv_path = {});

}  // namespace blocklcs::cli
