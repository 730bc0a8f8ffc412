#include "lambdatrap/sim/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lambdatrap/trap_analysis.hpp"

namespace lambdatrap::sim {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_number(std::string_view s) {
    std::string t = trim(s);
    std::string_view v = t;
    if (!v.empty() && v.front() == '+') v.remove_prefix(1);
    if (v.empty()) return std::nullopt;
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) return std::nullopt;
    return out;
}

std::optional<complex> parse_complex(std::string_view s) {
    const auto comma = s.find(',');
    if (comma == std::string_view::npos) {
        const auto re = parse_number(s);
        if (!re) return std::nullopt;
        return complex{*re, 0.0};
    }
    const auto re = parse_number(s.substr(0, comma));
    const auto im = parse_number(s.substr(comma + 1));
    if (!re || !im) return std::nullopt;
    return complex{*re, *im};
}

std::string fmt(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string fmt(complex c) { return fmt(c.real()) + "," + fmt(c.imag()); }

}  // namespace

std::string ParseResult::error_text() const {
    std::string out;
    for (const auto& e : errors) {
        out += e.message;
        out += '\n';
    }
    return out;
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    if (s == "both") return OutputFormat::both;
    throw std::invalid_argument("unknown format '" + s + "' (expected csv|json|both)");
}

FieldSchedule RunSpec::schedule() const {
    if (pulse) return FieldSchedule::rectangular(a1_amp, a2_amp, pulse->center, pulse->width);
    return FieldSchedule::constant(a1_amp, a2_amp);
}

CoherenceState RunSpec::initial_state() const {
    switch (init.kind) {
        case InitKind::ground1: return CoherenceState::ground1();
        case InitKind::dark: {
            const DressedBasis b = dressed_basis(params.g1, params.g2);
            return CoherenceState::from_amplitudes(b.minus_coeffs[0], b.minus_coeffs[1], 0.0);
        }
        case InitKind::custom: return CoherenceState::from_amplitudes(init.c1, init.c2, init.c3);
    }
    return CoherenceState::ground1();
}

ParseResult parse_config(const std::string& text) {
    ParseResult result;
    RunSpec spec;
    std::map<std::string, int> seen;  // key -> line
    auto error = [&](int line, std::string msg) {
        result.errors.push_back({line, std::move(msg)});
    };
    auto at_line = [](int line) { return " at line " + std::to_string(line); };

    using Setter = std::function<bool(std::string_view)>;
    auto number = [&](double& slot) -> Setter {
        return [&slot](std::string_view v) {
            const auto x = parse_number(v);
            if (!x) return false;
            slot = *x;
            return true;
        };
    };
    auto amplitude = [&](complex& slot) -> Setter {
        return [&slot](std::string_view v) {
            const auto x = parse_complex(v);
            if (!x) return false;
            slot = *x;
            return true;
        };
    };

    double delta_nu = 0.0;
    PulseSpec pulse;
    AtomFieldParams& p = spec.params;
    const std::map<std::string, Setter, std::less<>> setters{
        {"g1", number(p.g1)},
        {"g2", number(p.g2)},
        {"delta1", number(p.delta1)},
        {"delta2", number(p.delta2)},
        {"omega21", number(p.omega21)},
        {"Delta", number(p.Delta)},
        {"delta_nu", number(delta_nu)},
        {"Gamma13", number(p.Gamma13)},
        {"Gamma23", number(p.Gamma23)},
        {"gamma13", number(p.gamma13)},
        {"gamma23", number(p.gamma23)},
        {"gamma12", number(p.gamma12)},
        {"a1_amp", number(spec.a1_amp)},
        {"a2_amp", number(spec.a2_amp)},
        {"pulse_center", number(pulse.center)},
        {"pulse_width", number(pulse.width)},
        {"t0", number(spec.t0)},
        {"t1", number(spec.t1)},
        {"dt", number(spec.dt)},
        {"c1", amplitude(spec.init.c1)},
        {"c2", amplitude(spec.init.c2)},
        {"c3", amplitude(spec.init.c3)},
        {"model",
         [&](std::string_view v) {
             if (v == "full") spec.model = ModelKind::full;
             else if (v == "reduced") spec.model = ModelKind::reduced;
             else if (v == "paper-components") spec.model = ModelKind::paper_components;
             else return false;
             return true;
         }},
        {"init",
         [&](std::string_view v) {
             if (v == "ground1") spec.init.kind = InitKind::ground1;
             else if (v == "dark") spec.init.kind = InitKind::dark;
             else if (v == "custom") spec.init.kind = InitKind::custom;
             else return false;
             return true;
         }},
    };

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const std::string content = trim(line);
        if (content.empty()) continue;

        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            error(line_no, "expected 'key = value'" + at_line(line_no));
            continue;
        }
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            error(line_no, "unknown key '" + key + "'" + at_line(line_no));
            continue;
        }
        if (const auto prev = seen.find(key); prev != seen.end()) {
            error(line_no, "duplicate key '" + key + "'" + at_line(line_no) + " (first at line " +
                               std::to_string(prev->second) + ")");
            continue;
        }
        seen.emplace(key, line_no);
        if (!it->second(value))
            error(line_no, "cannot parse value '" + value + "' for key '" + key + "'" +
                               at_line(line_no));
    }

    auto line_of = [&](const std::string& key) {
        const auto it = seen.find(key);
        return it == seen.end() ? 0 : it->second;
    };
    auto invariant = [&](const std::string& key, const std::string& msg) {
        const int line = line_of(key);
        error(line, "invariant violated: " + msg + (line > 0 ? at_line(line) : std::string{}));
    };

    if (seen.count("delta_nu")) {
        if (seen.count("Delta"))
            invariant("delta_nu", "Delta and delta_nu are mutually exclusive");
        else
            p.Delta = two_pi * delta_nu;
    }

    for (const auto& msg : validate_params(p)) {
        const std::string key = msg.substr(0, msg.find(' '));
        invariant(key, msg);
    }
    if (!(spec.dt > 0.0)) invariant("dt", "dt must be positive");
    if (!(spec.t1 > spec.t0)) invariant("t1", "t1 must exceed t0");
    if (spec.a1_amp < 0.0) invariant("a1_amp", "a1_amp negative");
    if (spec.a2_amp < 0.0) invariant("a2_amp", "a2_amp negative");

    const bool has_center = seen.count("pulse_center") > 0;
    const bool has_width = seen.count("pulse_width") > 0;
    if (has_center != has_width) {
        invariant(has_center ? "pulse_center" : "pulse_width",
                  "pulse_center and pulse_width must be given together");
    } else if (has_center) {
        if (!(pulse.width > 0.0)) invariant("pulse_width", "pulse_width must be positive");
        spec.pulse = pulse;
    }

    const bool any_c = seen.count("c1") || seen.count("c2") || seen.count("c3");
    if (spec.init.kind == InitKind::custom) {
        if (!any_c) invariant("init", "init = custom requires c1, c2, c3");
        const double n = std::norm(spec.init.c1) + std::norm(spec.init.c2) + std::norm(spec.init.c3);
        if (std::abs(n - 1.0) > 1e-9) invariant("c1", "custom amplitudes not normalized");
    } else if (any_c) {
        invariant(seen.count("c1") ? "c1" : (seen.count("c2") ? "c2" : "c3"),
                  "c1/c2/c3 require init = custom");
    }
    if (spec.init.kind == InitKind::dark && !(std::hypot(p.g1, p.g2) > 0.0))
        invariant("init", "init = dark requires g1 or g2 nonzero");

    if (result.errors.empty()) result.spec = spec;
    return result;
}

std::string render_config(const RunSpec& spec) {
    const AtomFieldParams& p = spec.params;
    std::ostringstream os;
    os << "# canonical run configuration\n";
    os << "g1 = " << fmt(p.g1) << '\n';
    os << "g2 = " << fmt(p.g2) << '\n';
    os << "delta1 = " << fmt(p.delta1) << '\n';
    os << "delta2 = " << fmt(p.delta2) << '\n';
    os << "omega21 = " << fmt(p.omega21) << '\n';
    os << "Delta = " << fmt(p.Delta) << '\n';
    os << "Gamma13 = " << fmt(p.Gamma13) << '\n';
    os << "Gamma23 = " << fmt(p.Gamma23) << '\n';
    os << "gamma13 = " << fmt(p.gamma13) << '\n';
    os << "gamma23 = " << fmt(p.gamma23) << '\n';
    os << "gamma12 = " << fmt(p.gamma12) << '\n';
    os << "a1_amp = " << fmt(spec.a1_amp) << '\n';
    os << "a2_amp = " << fmt(spec.a2_amp) << '\n';
    if (spec.pulse) {
        os << "pulse_center = " << fmt(spec.pulse->center) << '\n';
        os << "pulse_width = " << fmt(spec.pulse->width) << '\n';
    }
    os << "model = " << to_string(spec.model) << '\n';
    switch (spec.init.kind) {
        case InitKind::ground1: os << "init = ground1\n"; break;
        case InitKind::dark: os << "init = dark\n"; break;
        case InitKind::custom:
            os << "init = custom\n";
            os << "c1 = " << fmt(spec.init.c1) << '\n';
            os << "c2 = " << fmt(spec.init.c2) << '\n';
            os << "c3 = " << fmt(spec.init.c3) << '\n';
            break;
    }
    os << "t0 = " << fmt(spec.t0) << '\n';
    os << "t1 = " << fmt(spec.t1) << '\n';
    os << "dt = " << fmt(spec.dt) << '\n';
    return os.str();
}

}  // namespace lambdatrap::sim
