// Orchestration behind the CLI subcommands.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lambdatrap/sim/config.hpp"
#include "lambdatrap/trap_analysis.hpp"

namespace lambdatrap::sim {

// Stable process exit codes.
enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_numerical = 2 };

struct SimulateResult {
    Trajectory trajectory;
    std::vector<std::filesystem::path> written;
};

// Integrates spec and writes trajectory.csv / trajectory.json plus the
// canonical run.cfg into spec.outputs.dir. Throws StepSizeError or
// NumericalAbort from the integrator; nothing is written in that case.
SimulateResult run_simulate(const RunSpec& spec);

struct WindowsRequest {
    double g1{1.0};
    double g2{0.0};
    double Delta{0.0};  // rad/s
    int n_max{5};
    CaseLabel case_label{CaseLabel::general};
};

WindowList compute_windows(const WindowsRequest& req);

// Writes windows.csv, windows.txt (and windows.json) into out.dir.
std::vector<std::filesystem::path> run_windows(const WindowsRequest& req, const OutputSpec& out);

enum class SweepAxis { ratio, Delta };

struct SweepRequest {
    SweepAxis axis{SweepAxis::ratio};
    std::vector<double> grid;
    double g1{1.0};
    double ratio{1.0};  // fixed g2/g1 when sweeping Delta
    double Delta{1.0};  // fixed Delta when sweeping the ratio
    unsigned threads{1};
};

struct SweepRow {
    std::size_t index{0};
    double ratio{0.0};
    double Delta{0.0};
    std::optional<double> first_window_t;  // empty on resonance
    double residual{0.0};
};

inline constexpr const char* sweep_csv_header = "index,ratio,Delta,first_window_t,residual";

// Rows come back in grid order whatever the evaluation order was.
std::vector<SweepRow> compute_sweep(const SweepRequest& req);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::vector<std::filesystem::path> run_sweep(const SweepRequest& req, const OutputSpec& out);

// Comma-separated list of numbers.
std::vector<double> parse_grid(const std::string& text);

}  // namespace lambdatrap::sim
