// Dressed states, the generalized trapping condition and
// the temporal windows at which the trapped population is decoupled.
//
// The trapping condition in cleared form is
//
//     R(t) = g2^2 (1 + cos Delta t) - g1^2 (1 - cos Delta t) = 0,
//
// equivalently |tan(Delta t / 2)| = g2 / g1. Its positive roots are the
// windows Delta t = 2 (+-atan(g2/g1) + k pi). On resonance (Delta = 0) the
// condition holds for every t and the window is continuous.

#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "lambdatrap/integrator.hpp"
#include "lambdatrap/lambda_model.hpp"

namespace lambdatrap {

// |-> = cos(theta)|1> - sin(theta)|2>, |+> = sin(theta)|1> + cos(theta)|2>,
// sin(theta) = g1 / g, cos(theta) = g2 / g.
struct DressedBasis {
    double sin_theta{0.0};
    double cos_theta{0.0};
    std::array<double, 2> minus_coeffs{};
    std::array<double, 2> plus_coeffs{};
};

DressedBasis dressed_basis(double g1, double g2);

// g1~ = g1 + g2 cos(Delta t), g2~ = g2 cos(Delta t), with the mixing angle
// sin(Theta) = g1~/g~, cos(Theta) = g2~/g~.
struct EffectiveCouplings {
    double g1_tilde{0.0};
    double g2_tilde{0.0};
    double g_tilde{0.0};
    double Theta{0.0};
};

EffectiveCouplings effective_couplings(double g1, double g2, double Delta, double t);

// <3|H|-> = (g1 g2~ - g2 g1~) / g~ built from effective_couplings.
double dark_coupling_element(double g1, double g2, double Delta, double t);

// R(t) above. Throws std::invalid_argument for g1 <= 0.
double trap_residual(double g1, double g2, double Delta, double t);

// R(t) / (g1^2 + g2^2); scale free, so one tolerance serves every coupling size.
double normalized_trap_residual(double g1, double g2, double Delta, double t);

enum class Branch { plus, minus };
enum class CaseLabel { general, case1, case2 };

std::string_view to_string(Branch b) noexcept;
std::string_view to_string(CaseLabel c) noexcept;

struct TrapWindow {
    int n{0};              // 1-based window index
    double t{0.0};         // seconds
    double delta_t{0.0};   // |Delta| t in radians
    Branch branch{Branch::plus};
    double residual{0.0};  // normalized residual at t
    CaseLabel case_label{CaseLabel::general};
};

// On resonance the trapping condition holds at all times.
struct ContinuousWindow {
    bool operator==(const ContinuousWindow&) const = default;
};

using WindowList = std::variant<std::vector<TrapWindow>, ContinuousWindow>;
using TimeList = std::variant<std::vector<double>, ContinuousWindow>;

inline bool is_continuous(const WindowList& w) noexcept {
    return std::holds_alternative<ContinuousWindow>(w);
}
inline bool is_continuous(const TimeList& w) noexcept {
    return std::holds_alternative<ContinuousWindow>(w);
}

inline constexpr double window_residual_tol = 1e-10;

// First n_max strictly positive windows, both branches merged and sorted.
// Two roots closer than the residual tolerance can resolve collapse into one.
WindowList solve_windows(double g1, double g2, double Delta, int n_max);

// n / |delta_nu|, n = 1..n_max (weak signal limit).
TimeList window_times_case1(double delta_nu, int n_max);

// (2n + 1) / (4 |delta_nu|), n = 1..n_max (equal couplings).
TimeList window_times_case2(double delta_nu, int n_max);

// Tabulates case1/case2 times as windows, residuals evaluated with (g1, g2).
WindowList case_windows(CaseLabel label, double g1, double g2, double delta_nu, int n_max);

// <3|H(t)|psi> for psi = c1|1> + c2|2> in the control-rotating frame:
// g1 a1 c1 + g2 a2 exp(i Delta t) c2. Rejects |c1|^2 + |c2|^2 != 1 beyond 1e-12.
complex hamiltonian_dark_overlap(complex c1, complex c2, const AtomFieldParams& p, double a1,
                                 double a2, double t);

struct WindowCheck {
    int index{0};
    double time{0.0};
    double mid_time{0.0};
    double j33_window{0.0};  // max J33 within +-5% of the window time
    double j33_mid{0.0};     // max J33 within +-5% of the mid-window time
    double ratio{0.0};
    bool covered{false};
    bool pass{false};
};

struct TrapReport {
    std::vector<WindowCheck> records;
    bool verdict{false};        // every covered record passes
    std::size_t uncovered{0};
    AtomFieldParams params;
    double tol{0.0};
};

// Mid-window time for window k is halfway to window k+1 (the last window
// uses the spacing to its predecessor, a lone window the span from 0).
TrapReport verify_trapping(const Trajectory& traj, const std::vector<TrapWindow>& windows,
                           double tol);

}  // namespace lambdatrap
