// Run specification and its `key = value` config grammar.
//
// Grammar: one `key = value` per line, `#` starts a comment, blank lines are
// ignored. The key set is closed; unknown or repeated keys are errors.
//
//   g1 g2 delta1 delta2 omega21          couplings / detunings (rad/s)
//   Delta | delta_nu                     field detuning, rad/s or Hz (not both)
//   Gamma13 Gamma23 gamma13 gamma23 gamma12   decay constants (default 0)
//   a1_amp a2_amp                        field magnitudes (default 1)
//   pulse_center pulse_width             rectangular pulse gating both fields
//   model  = full | reduced | paper-components   (default full)
//   init   = ground1 | dark | custom             (default ground1)
//   c1 c2 c3                             custom amplitudes, `re` or `re,im`
//   t0 t1 dt                             seconds (defaults 0, 1, 1e-3)

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lambdatrap/integrator.hpp"
#include "lambdatrap/lambda_model.hpp"

namespace lambdatrap::sim {

enum class InitKind { ground1, dark, custom };

struct InitSpec {
    InitKind kind{InitKind::ground1};
    complex c1{1.0, 0.0};
    complex c2{};
    complex c3{};

    bool operator==(const InitSpec&) const = default;
};

struct PulseSpec {
    double center{0.0};
    double width{0.0};

    bool operator==(const PulseSpec&) const = default;
};

enum class OutputFormat { csv, json, both };

struct OutputSpec {
    std::string dir{"."};
    OutputFormat format{OutputFormat::csv};

    [[nodiscard]] bool csv() const noexcept { return format != OutputFormat::json; }
    [[nodiscard]] bool json() const noexcept { return format != OutputFormat::csv; }

    bool operator==(const OutputSpec&) const = default;
};

struct RunSpec {
    AtomFieldParams params;
    ModelKind model{ModelKind::full};
    InitSpec init;
    double a1_amp{1.0};
    double a2_amp{1.0};
    std::optional<PulseSpec> pulse;
    double t0{0.0};
    double t1{1.0};
    double dt{1e-3};
    OutputSpec outputs;  // set from the command line, not the config text

    [[nodiscard]] FieldSchedule schedule() const;
    [[nodiscard]] CoherenceState initial_state() const;

    bool operator==(const RunSpec&) const = default;
};

struct ConfigError {
    int line{0};  // 0 when the error is not tied to one line
    std::string message;
};

struct ParseResult {
    std::optional<RunSpec> spec;
    std::vector<ConfigError> errors;

    [[nodiscard]] bool ok() const noexcept { return spec.has_value(); }
    [[nodiscard]] std::string error_text() const;
};

ParseResult parse_config(const std::string& text);

// Canonical config text; parse_config(render_config(s)) reproduces s.
std::string render_config(const RunSpec& spec);

OutputFormat parse_format(const std::string& s);

}  // namespace lambdatrap::sim
