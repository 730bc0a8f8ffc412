// Command-line front end: simulate, windows, sweep, validate.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "lambdatrap/sim/config.hpp"
#include "lambdatrap/sim/output.hpp"
#include "lambdatrap/sim/runs.hpp"
#include "lambdatrap/sim/validation.hpp"

namespace ls = lambdatrap::sim;
using lambdatrap::CaseLabel;

namespace {

struct Globals {
    std::string config;
    std::string out = ".";
    std::string format = "csv";
    std::uint64_t seed = ls::default_seed;
};

std::optional<ls::RunSpec> load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read config '" << path << "'\n";
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const ls::ParseResult r = ls::parse_config(buf.str());
    if (!r.ok()) {
        std::cerr << path << ":\n" << r.error_text();
        return std::nullopt;
    }
    return r.spec;
}

int cmd_simulate(const Globals& g, const ls::OutputSpec& out) {
    if (g.config.empty()) {
        std::cerr << "error: simulate requires --config <path>\n";
        return ls::exit_usage;
    }
    auto spec = load_config(g.config);
    if (!spec) return ls::exit_usage;
    spec->outputs = out;
    try {
        const auto result = ls::run_simulate(*spec);
        for (const auto& p : result.written) std::cout << "wrote " << p.string() << '\n';
    } catch (const lambdatrap::StepSizeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ls::exit_numerical;
    } catch (const lambdatrap::NumericalAbort& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ls::exit_numerical;
    }
    return ls::exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-level Lambda atom simulator and trapping-window analysis"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config, "Run configuration (key = value)");
    app.add_option("--out", g.out, "Output directory")->capture_default_str();
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "Seed for validation sampling")->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "Integrate the Maxwell-Bloch equations");

    auto* windows = app.add_subcommand("windows", "Tabulate trapping windows");
    ls::WindowsRequest wreq;
    std::optional<double> w_g1, w_g2, w_delta_nu, w_Delta;
    std::string w_case = "general";
    windows->add_option("--g1", w_g1, "Control coupling (rad/s)");
    windows->add_option("--g2", w_g2, "Signal coupling (rad/s)");
    auto* w_nu_opt = windows->add_option("--delta-nu", w_delta_nu, "Field detuning (Hz)");
    windows->add_option("--Delta", w_Delta, "Field detuning (rad/s)")->excludes(w_nu_opt);
    windows->add_option("--n-max", wreq.n_max, "Number of windows")->capture_default_str();
    windows->add_option("--case", w_case, "general | case1 | case2")
        ->check(CLI::IsMember({"general", "case1", "case2"}))
        ->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "First window across a ratio or Delta grid");
    ls::SweepRequest sreq;
    sreq.threads = std::max(1u, std::thread::hardware_concurrency());
    std::string s_axis = "ratio";
    std::string s_grid;
    std::optional<double> s_g1, s_ratio, s_delta_nu, s_Delta;
    sweep->add_option("--axis", s_axis, "ratio | Delta")
        ->check(CLI::IsMember({"ratio", "Delta"}))
        ->capture_default_str();
    sweep->add_option("--grid", s_grid, "Comma-separated, strictly increasing grid")->required();
    sweep->add_option("--g1", s_g1, "Control coupling (rad/s)");
    sweep->add_option("--ratio", s_ratio, "Fixed g2/g1 for a Delta sweep");
    auto* s_nu_opt = sweep->add_option("--delta-nu", s_delta_nu, "Fixed detuning for a ratio sweep (Hz)");
    sweep->add_option("--Delta", s_Delta, "Fixed detuning for a ratio sweep (rad/s)")->excludes(s_nu_opt);
    sweep->add_option("--threads", sreq.threads, "Worker threads")->capture_default_str();

    auto* validate = app.add_subcommand("validate", "Cross-check the equation forms");
    std::size_t v_samples = 1000;
    validate->add_option("--samples", v_samples, "Seeded states per check")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ls::exit_ok : ls::exit_usage;
    }

    try {
        ls::OutputSpec out;
        out.dir = g.out;
        out.format = ls::parse_format(g.format);

        // Values from --config seed the analytic subcommands; flags override.
        std::optional<ls::RunSpec> base;
        if (!g.config.empty() && !simulate->parsed()) {
            base = load_config(g.config);
            if (!base) return ls::exit_usage;
        }

        if (simulate->parsed()) return cmd_simulate(g, out);

        if (windows->parsed()) {
            if (base) {
                wreq.g1 = base->params.g1;
                wreq.g2 = base->params.g2;
                wreq.Delta = base->params.Delta;
            }
            if (w_g1) wreq.g1 = *w_g1;
            if (w_g2) wreq.g2 = *w_g2;
            if (w_delta_nu) wreq.Delta = lambdatrap::two_pi * *w_delta_nu;
            if (w_Delta) wreq.Delta = *w_Delta;
            wreq.case_label = w_case == "case1"   ? CaseLabel::case1
                              : w_case == "case2" ? CaseLabel::case2
                                                  : CaseLabel::general;
            ls::run_windows(wreq, out);
            std::cout << ls::windows_text(ls::compute_windows(wreq));
            return ls::exit_ok;
        }

        if (sweep->parsed()) {
            if (base) {
                sreq.g1 = base->params.g1;
                if (base->params.g1 > 0.0) sreq.ratio = base->params.g2 / base->params.g1;
                sreq.Delta = base->params.Delta;
            }
            if (s_g1) sreq.g1 = *s_g1;
            if (s_ratio) sreq.ratio = *s_ratio;
            if (s_delta_nu) sreq.Delta = lambdatrap::two_pi * *s_delta_nu;
            if (s_Delta) sreq.Delta = *s_Delta;
            sreq.axis = s_axis == "Delta" ? ls::SweepAxis::Delta : ls::SweepAxis::ratio;
            sreq.grid = ls::parse_grid(s_grid);
            for (const auto& p : ls::run_sweep(sreq, out)) std::cout << "wrote " << p.string() << '\n';
            return ls::exit_ok;
        }

        if (validate->parsed()) {
            for (const auto& p : ls::run_validate(g.seed, v_samples, g.out))
                std::cout << "wrote " << p.string() << '\n';
            return ls::exit_ok;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ls::exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ls::exit_numerical;
    }
    return ls::exit_usage;
}
