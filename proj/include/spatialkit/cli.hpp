#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "spatialkit/pipelines.hpp"

namespace spatialkit::cli {

/// Raised for malformed configuration; the CLI maps it to exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// One fully specified invocation. Both the flag parser and the config-file
/// reader produce this record; `validate` runs before any pixel work.
struct CommandConfig {
    std::string command;  // quantize | equalize | brighten | sharpen | filter | pipeline | features | cue | compare
    std::string action;   // pipeline: forward|reverse|tune; features: edges|lines|circles|corners|windows;
                          // cue: angle|align|isolate

    std::filesystem::path input;
    std::filesystem::path input2;  // compare: second image; tune: target
    std::filesystem::path output;
    std::filesystem::path report;

    // quantize
    std::string preset = "paper8";
    std::filesystem::path map;
    // equalize / brighten / filter
    std::string mode = "rgb";
    int v = 30;
    std::string kind = "gaussian";
    int size = 7;
    // pipelines
    double alpha = 0.45;
    std::optional<double> gamma;  // defaults to 0.26 forward, 4.05 reverse
    double beta = 1.8;
    std::string direction = "forward";
    std::optional<GridSpec> grid;
    std::filesystem::path grid_file;
    bool override_ranges = false;
    // metrics
    double w = 0.5;
    // features
    double sigma = 0.5;
    std::optional<int> median_size;  // unset: each detector's own default
    double rho = 1.0;
    double theta = 7.0;
    int votes = 50;
    int r_min = 25;
    int r_max = 33;
    int circle_votes = 60;
    double harris_k = 0.04;
    double harris_rel = 0.01;
    int harris_median = 5;
    double door_ratio = 1.8;
    // cue
    double canny_lo = 100.0;
    double canny_hi = 200.0;
    int line_votes = 200;
    int cloth_peak = 49;

    double effective_gamma() const;
    GridSpec effective_grid() const;
};

/// Reads the `key = value` config format (one pair per line, `#` comments,
/// grid axes as `grid.<name> = min, max, step`). Unknown keys are rejected.
CommandConfig parse_config(const std::filesystem::path& path);

/// Reads a JSON grid: [{"name": "alpha", "min": .., "max": .., "step": ..}, ...].
GridSpec load_grid(const std::filesystem::path& path);

/// Checks command/action names, required paths and every parameter range.
void validate(const CommandConfig& cfg);

/// Runs a validated command. Returns the process exit code.
int execute(const CommandConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command-line entry point; argv[0] is the program name.
/// Exit codes: 0 success, 1 usage or configuration error, 2 processing error.
int run(std::span<const std::string> argv, std::ostream& out, std::ostream& err);

}  // namespace spatialkit::cli
