#include "lambdatrap/sim/output.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace lambdatrap::sim {

std::string sci(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 11);
    if (ec != std::errc{}) throw std::runtime_error("sci: formatting failed");
    return std::string(buf, ptr);
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = trajectory_csv_header;
    out += '\n';
    out.reserve(out.size() + traj.size() * 14 * 19);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const CoherenceState& s = traj.states[i];
        const FieldState& f = traj.fields_at[i];
        const double row[] = {traj.times[i], s.J11,        s.J22,        s.J33,        s.J13.real(),
                              s.J13.imag(),  s.J23.real(), s.J23.imag(), s.J12.real(), s.J12.imag(),
                              f.a1x,         f.a1y,        f.a2x,        f.a2y};
        bool first = true;
        for (double v : row) {
            if (!first) out += ',';
            out += sci(v);
            first = false;
        }
        out += '\n';
    }
    return out;
}

namespace {
nlohmann::json params_json(const AtomFieldParams& p) {
    return {{"g1", p.g1},           {"g2", p.g2},           {"delta1", p.delta1},
            {"delta2", p.delta2},   {"omega21", p.omega21}, {"Delta", p.Delta},
            {"delta_nu", p.delta_nu()},
            {"Gamma13", p.Gamma13}, {"Gamma23", p.Gamma23}, {"gamma13", p.gamma13},
            {"gamma23", p.gamma23}, {"gamma12", p.gamma12}};
}
}  // namespace

std::string trajectory_json(const Trajectory& traj) {
    nlohmann::json j;
    j["metadata"] = {{"model", std::string(to_string(traj.metadata.model))},
                     {"dt", traj.metadata.dt},
                     {"steps", traj.size() == 0 ? 0 : traj.size() - 1},
                     {"params", params_json(traj.metadata.params)}};
    nlohmann::json cols = nlohmann::json::object();
    std::vector<double> c[14];
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const CoherenceState& s = traj.states[i];
        const FieldState& f = traj.fields_at[i];
        const double row[] = {traj.times[i], s.J11,        s.J22,        s.J33,        s.J13.real(),
                              s.J13.imag(),  s.J23.real(), s.J23.imag(), s.J12.real(), s.J12.imag(),
                              f.a1x,         f.a1y,        f.a2x,        f.a2y};
        for (int k = 0; k < 14; ++k) c[k].push_back(row[k]);
    }
    const char* names[] = {"t",     "J11",   "J22",   "J33",   "ReJ13", "ImJ13", "ReJ23",
                           "ImJ23", "ReJ12", "ImJ12", "a1x",   "a1y",   "a2x",   "a2y"};
    for (int k = 0; k < 14; ++k) cols[names[k]] = c[k];
    j["columns"] = std::move(cols);
    return j.dump(1) + "\n";
}

std::string windows_csv(const WindowList& windows) {
    std::string out = windows_csv_header;
    out += '\n';
    if (is_continuous(windows)) return out;
    for (const TrapWindow& w : std::get<std::vector<TrapWindow>>(windows)) {
        out += std::to_string(w.n) + ',' + sci(w.t) + ',' + sci(w.delta_t) + ',' + sci(w.residual) +
               ',' + std::string(to_string(w.branch)) + '\n';
    }
    return out;
}

std::string windows_text(const WindowList& windows) {
    if (is_continuous(windows)) return std::string(resonance_line) + "\n";
    const auto& list = std::get<std::vector<TrapWindow>>(windows);
    std::string out;
    if (!list.empty())
        out += "trap windows (" + std::string(to_string(list.front().case_label)) + ")\n";
    out += "   n         t [s]     Delta*t [rad]          residual  branch\n";
    for (const TrapWindow& w : list) {
        char line[160];
        std::snprintf(line, sizeof line, "%4d  %16s  %16s  %16s  %s\n", w.n, sci(w.t).c_str(),
                      sci(w.delta_t).c_str(), sci(w.residual).c_str(),
                      std::string(to_string(w.branch)).c_str());
        out += line;
    }
    return out;
}

std::string windows_json(const WindowList& windows) {
    nlohmann::json j;
    if (is_continuous(windows)) {
        j["continuous"] = true;
        j["windows"] = nlohmann::json::array();
    } else {
        j["continuous"] = false;
        nlohmann::json arr = nlohmann::json::array();
        for (const TrapWindow& w : std::get<std::vector<TrapWindow>>(windows)) {
            arr.push_back({{"n", w.n},
                           {"t_seconds", w.t},
                           {"Delta_t_rad", w.delta_t},
                           {"residual", w.residual},
                           {"branch", std::string(to_string(w.branch))},
                           {"case", std::string(to_string(w.case_label))}});
        }
        j["windows"] = std::move(arr);
    }
    return j.dump(1) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignore;
        std::filesystem::remove(tmp, ignore);
        throw std::runtime_error("cannot replace " + path.string() + ": " + ec.message());
    }
}

}  // namespace lambdatrap::sim
