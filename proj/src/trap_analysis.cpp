#include "lambdatrap/trap_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lambdatrap {

std::string_view to_string(Branch b) noexcept { return b == Branch::plus ? "plus" : "minus"; }

std::string_view to_string(CaseLabel c) noexcept {
    switch (c) {
        case CaseLabel::general: return "general";
        case CaseLabel::case1: return "case1";
        case CaseLabel::case2: return "case2";
    }
    return "?";
}

DressedBasis dressed_basis(double g1, double g2) {
    if (g1 < 0.0 || g2 < 0.0) throw std::invalid_argument("dressed_basis: negative coupling");
    const double g = std::hypot(g1, g2);
    if (!(g > 0.0)) throw std::invalid_argument("dressed_basis: both couplings zero");
    DressedBasis b;
    b.sin_theta = g1 / g;
    b.cos_theta = g2 / g;
    b.minus_coeffs = {b.cos_theta, -b.sin_theta};
    b.plus_coeffs = {b.sin_theta, b.cos_theta};
    return b;
}

EffectiveCouplings effective_couplings(double g1, double g2, double Delta, double t) {
    const double c = std::cos(Delta * t);
    EffectiveCouplings e;
    e.g1_tilde = g1 + g2 * c;
    e.g2_tilde = g2 * c;
    e.g_tilde = std::hypot(e.g1_tilde, e.g2_tilde);
    if (!(e.g_tilde > 0.0))
        throw std::invalid_argument("effective_couplings: g~ vanishes, mixing angle undefined");
    e.Theta = std::atan2(e.g1_tilde, e.g2_tilde);
    return e;
}

double dark_coupling_element(double g1, double g2, double Delta, double t) {
    const EffectiveCouplings e = effective_couplings(g1, g2, Delta, t);
    return (g1 * e.g2_tilde - g2 * e.g1_tilde) / e.g_tilde;
}

double trap_residual(double g1, double g2, double Delta, double t) {
    if (!(g1 > 0.0)) throw std::invalid_argument("trap_residual: g1 must be positive");
    const double c = std::cos(Delta * t);
    return g2 * g2 * (1.0 + c) - g1 * g1 * (1.0 - c);
}

double normalized_trap_residual(double g1, double g2, double Delta, double t) {
    return trap_residual(g1, g2, Delta, t) / (g1 * g1 + g2 * g2);
}

namespace {

void require_n_max(int n_max) {
    if (n_max < 1) throw std::invalid_argument("window count n_max must be >= 1");
}

struct Root {
    double x;  // |Delta| t
    Branch branch;
};

}  // namespace

WindowList solve_windows(double g1, double g2, double Delta, int n_max) {
    if (!(g1 > 0.0)) throw std::invalid_argument("solve_windows: g1 must be positive");
    if (g2 < 0.0) throw std::invalid_argument("solve_windows: g2 negative");
    require_n_max(n_max);
    if (Delta == 0.0) return ContinuousWindow{};

    constexpr double pi = std::numbers::pi;
    const double w = std::abs(Delta);
    const double a = std::atan(g2 / g1);
    auto residual_at = [&](double x) { return normalized_trap_residual(g1, g2, 1.0, x); };

    std::vector<Root> roots;
    roots.reserve(2 * static_cast<std::size_t>(n_max) + 2);
    // The k = 0 minus root is negative; it is kept until after merging so a
    // tiny plus root next to it collapses onto the trivial root at t = 0.
    for (int k = 0; k <= n_max + 1; ++k) {
        roots.push_back({2.0 * (a + k * pi), Branch::plus});
        roots.push_back({2.0 * (k * pi - a), Branch::minus});
    }
    std::sort(roots.begin(), roots.end(), [](const Root& l, const Root& r) { return l.x < r.x; });

    // Near-degenerate pairs (g2/g1 -> 0 or -> infinity) collapse onto the
    // double root between them once that point meets the tolerance itself.
    std::vector<Root> merged;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        Root root = roots[i];
        if (i + 1 < roots.size()) {
            const double mid = 0.5 * (roots[i].x + roots[i + 1].x);
            if (std::abs(residual_at(mid)) < window_residual_tol) {
                root = {mid, Branch::plus};
                ++i;
            }
        }
        if (root.x > 0.0) merged.push_back(root);
    }

    std::vector<TrapWindow> windows;
    for (const Root& r : merged) {
        if (static_cast<int>(windows.size()) == n_max) break;
        TrapWindow win;
        win.n = static_cast<int>(windows.size()) + 1;
        win.t = r.x / w;
        win.delta_t = r.x;
        win.branch = r.branch;
        win.residual = normalized_trap_residual(g1, g2, Delta, win.t);
        win.case_label = CaseLabel::general;
        if (!(std::abs(win.residual) < window_residual_tol)) {
            std::ostringstream os;
            os << "solve_windows: residual " << win.residual << " at window " << win.n
               << " exceeds tolerance";
            throw std::runtime_error(os.str());
        }
        windows.push_back(win);
    }
    return windows;
}

TimeList window_times_case1(double delta_nu, int n_max) {
    require_n_max(n_max);
    if (delta_nu == 0.0) return ContinuousWindow{};
    std::vector<double> times;
    for (int n = 1; n <= n_max; ++n) times.push_back(n / std::abs(delta_nu));
    return times;
}

TimeList window_times_case2(double delta_nu, int n_max) {
    require_n_max(n_max);
    if (delta_nu == 0.0) return ContinuousWindow{};
    std::vector<double> times;
    for (int n = 1; n <= n_max; ++n) times.push_back((2.0 * n + 1.0) / (4.0 * std::abs(delta_nu)));
    return times;
}

WindowList case_windows(CaseLabel label, double g1, double g2, double delta_nu, int n_max) {
    if (label == CaseLabel::general)
        throw std::invalid_argument("case_windows: use solve_windows for the general case");
    const TimeList times = label == CaseLabel::case1 ? window_times_case1(delta_nu, n_max)
                                                     : window_times_case2(delta_nu, n_max);
    if (is_continuous(times)) return ContinuousWindow{};

    const double Delta = two_pi * delta_nu;
    std::vector<TrapWindow> windows;
    int n = 0;
    for (double t : std::get<std::vector<double>>(times)) {
        ++n;
        TrapWindow win;
        win.n = n;
        win.t = t;
        win.delta_t = std::abs(Delta) * t;
        // case1 roots are the merged double roots; case2 alternates 3pi/2 (minus), 5pi/2 (plus)...
        win.branch = (label == CaseLabel::case2 && n % 2 == 1) ? Branch::minus : Branch::plus;
        win.residual = normalized_trap_residual(g1, g2, Delta, t);
        win.case_label = label;
        windows.push_back(win);
    }
    return windows;
}

complex hamiltonian_dark_overlap(complex c1, complex c2, const AtomFieldParams& p, double a1,
                                 double a2, double t) {
    const double norm = std::norm(c1) + std::norm(c2);
    if (std::abs(norm - 1.0) > 1e-12)
        throw std::invalid_argument("hamiltonian_dark_overlap: coefficients not normalized");
    const complex rot = std::polar(1.0, p.Delta * t);
    return p.g1 * a1 * c1 + p.g2 * a2 * rot * c2;
}

namespace {

// Max J33 over samples in [lo, hi]; nearest sample if none fall inside.
double max_j33(const Trajectory& traj, double lo, double hi) {
    const auto& ts = traj.times;
    auto first = std::lower_bound(ts.begin(), ts.end(), lo);
    auto last = std::upper_bound(ts.begin(), ts.end(), hi);
    if (first >= last) {
        const double c = 0.5 * (lo + hi);
        auto it = std::lower_bound(ts.begin(), ts.end(), c);
        if (it == ts.end()) --it;
        if (it != ts.begin() && std::abs(*(it - 1) - c) < std::abs(*it - c)) --it;
        return traj.states[static_cast<std::size_t>(it - ts.begin())].J33;
    }
    double best = -std::numeric_limits<double>::infinity();
    for (auto it = first; it != last; ++it)
        best = std::max(best, traj.states[static_cast<std::size_t>(it - ts.begin())].J33);
    return best;
}

}  // namespace

TrapReport verify_trapping(const Trajectory& traj, const std::vector<TrapWindow>& windows,
                           double tol) {
    TrapReport report;
    report.params = traj.metadata.params;
    report.tol = tol;
    report.verdict = true;
    if (traj.times.empty()) {
        report.verdict = windows.empty();
        report.uncovered = windows.size();
        for (const auto& w : windows) report.records.push_back({w.n, w.t, 0.0, 0.0, 0.0, 0.0, false, false});
        return report;
    }

    const double front = traj.times.front();
    const double back = traj.times.back();
    constexpr double halfwidth = 0.05;

    for (std::size_t i = 0; i < windows.size(); ++i) {
        WindowCheck rec;
        rec.index = windows[i].n;
        rec.time = windows[i].t;
        if (i + 1 < windows.size())
            rec.mid_time = 0.5 * (windows[i].t + windows[i + 1].t);
        else if (i > 0)
            rec.mid_time = windows[i].t + 0.5 * (windows[i].t - windows[i - 1].t);
        else
            rec.mid_time = 0.5 * windows[i].t;

        rec.covered = rec.time >= front && rec.time <= back && rec.mid_time >= front &&
                      rec.mid_time <= back;
        if (!rec.covered) {
            ++report.uncovered;
            report.records.push_back(rec);
            continue;
        }

        auto clip_lo = [&](double v) { return std::max(front, v); };
        auto clip_hi = [&](double v) { return std::min(back, v); };
        rec.j33_window = max_j33(traj, clip_lo(rec.time * (1.0 - halfwidth)),
                                 clip_hi(rec.time * (1.0 + halfwidth)));
        rec.j33_mid = max_j33(traj, clip_lo(rec.mid_time * (1.0 - halfwidth)),
                              clip_hi(rec.mid_time * (1.0 + halfwidth)));
        if (rec.j33_mid > 0.0)
            rec.ratio = rec.j33_window / rec.j33_mid;
        else
            rec.ratio = rec.j33_window > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        rec.pass = rec.j33_window <= tol * rec.j33_mid;
        report.verdict = report.verdict && rec.pass;
        report.records.push_back(rec);
    }
    return report;
}

}  // namespace lambdatrap
