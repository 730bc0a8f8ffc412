#include "lambdatrap/sim/runs.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lambdatrap/sim/output.hpp"

namespace lambdatrap::sim {

namespace fs = std::filesystem;

SimulateResult run_simulate(const RunSpec& spec) {
    SimulateResult result;
    result.trajectory = integrate(spec.model, spec.initial_state(), spec.params, spec.schedule(),
                                  spec.t0, spec.t1, spec.dt);

    const fs::path dir = spec.outputs.dir;
    fs::create_directories(dir);
    if (spec.outputs.csv()) {
        write_file(dir / "trajectory.csv", trajectory_csv(result.trajectory));
        result.written.push_back(dir / "trajectory.csv");
    }
    if (spec.outputs.json()) {
        write_file(dir / "trajectory.json", trajectory_json(result.trajectory));
        result.written.push_back(dir / "trajectory.json");
    }
    write_file(dir / "run.cfg", render_config(spec));
    result.written.push_back(dir / "run.cfg");
    return result;
}

WindowList compute_windows(const WindowsRequest& req) {
    if (req.case_label == CaseLabel::general) return solve_windows(req.g1, req.g2, req.Delta, req.n_max);
    return case_windows(req.case_label, req.g1, req.g2, req.Delta / two_pi, req.n_max);
}

std::vector<fs::path> run_windows(const WindowsRequest& req, const OutputSpec& out) {
    const WindowList windows = compute_windows(req);
    const fs::path dir = out.dir;
    fs::create_directories(dir);
    std::vector<fs::path> written;
    if (out.csv()) {
        write_file(dir / "windows.csv", windows_csv(windows));
        written.push_back(dir / "windows.csv");
    }
    write_file(dir / "windows.txt", windows_text(windows));
    written.push_back(dir / "windows.txt");
    if (out.json()) {
        write_file(dir / "windows.json", windows_json(windows));
        written.push_back(dir / "windows.json");
    }
    return written;
}

namespace {

void require_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("sweep grid must be strictly increasing");
}

SweepRow sweep_point(const SweepRequest& req, std::size_t i) {
    SweepRow row;
    row.index = i;
    row.ratio = req.axis == SweepAxis::ratio ? req.grid[i] : req.ratio;
    row.Delta = req.axis == SweepAxis::Delta ? req.grid[i] : req.Delta;
    const WindowList w = solve_windows(req.g1, row.ratio * req.g1, row.Delta, 1);
    if (!is_continuous(w)) {
        const TrapWindow& first = std::get<std::vector<TrapWindow>>(w).front();
        row.first_window_t = first.t;
        row.residual = first.residual;
    }
    return row;
}

}  // namespace

std::vector<SweepRow> compute_sweep(const SweepRequest& req) {
    require_grid(req.grid);
    if (!(req.g1 > 0.0)) throw std::invalid_argument("sweep: g1 must be positive");
    if (req.axis == SweepAxis::ratio && req.grid.front() < 0.0)
        throw std::invalid_argument("sweep: ratios must be nonnegative");
    if (req.axis == SweepAxis::Delta && req.ratio < 0.0)
        throw std::invalid_argument("sweep: ratio must be nonnegative");

    std::vector<SweepRow> rows(req.grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) rows[i] = sweep_point(req, i);
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(req.threads, rows.size()));
    if (n_threads == 1) {
        worker();
        return rows;
    }
    {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = sweep_csv_header;
    out += '\n';
    for (const SweepRow& r : rows) {
        out += std::to_string(r.index) + ',' + sci(r.ratio) + ',' + sci(r.Delta) + ',';
        out += r.first_window_t ? sci(*r.first_window_t) : std::string("continuous");
        out += ',' + sci(r.residual) + '\n';
    }
    return out;
}

std::vector<fs::path> run_sweep(const SweepRequest& req, const OutputSpec& out) {
    const auto rows = compute_sweep(req);
    const fs::path dir = out.dir;
    fs::create_directories(dir);
    write_file(dir / "sweep.csv", sweep_csv(rows));
    return {dir / "sweep.csv"};
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = std::min(text.find(',', pos), text.size());
        std::string item = text.substr(pos, comma - pos);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty() && item.front() == '+') item.erase(0, 1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size() || !std::isfinite(v))
            throw std::invalid_argument("cannot parse grid value '" + item + "'");
        grid.push_back(v);
        pos = comma + 1;
    }
    return grid;
}

}  // namespace lambdatrap::sim
