// Domain types for a three-level Lambda atom driven by a
// control field (1<->3) and a signal field (2<->3).
//
// Units: hbar = 1, every frequency, detuning and coupling is an angular
// frequency in rad/s. Hz only appears through AtomFieldParams::delta_nu().

#pragma once

#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace lambdatrap {

using complex = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct AtomFieldParams {
    double g1{0.0};       // control coupling
    double g2{0.0};       // signal coupling
    double delta1{0.0};   // control detuning  w1 - w31
    double delta2{0.0};   // w1 - w21, consumed only by the J12 equation
    double omega21{0.0};  // ground-state splitting
    double Delta{0.0};    // field detuning    w1 - w2
    double Gamma13{0.0};  // population decay 3 -> 1
    double Gamma23{0.0};  // population decay 3 -> 2
    double gamma13{0.0};  // coherence decay
    double gamma23{0.0};
    double gamma12{0.0};

    // Field detuning in Hz: nu1 - nu2.
    [[nodiscard]] double delta_nu() const noexcept { return Delta / two_pi; }

    [[nodiscard]] static AtomFieldParams from_delta_nu(double delta_nu) {
        AtomFieldParams p;
        p.Delta = two_pi * delta_nu;
        return p;
    }

    bool operator==(const AtomFieldParams&) const = default;
};

// Returns every violated invariant; empty means valid.
std::vector<std::string> validate_params(const AtomFieldParams& p);

// Throws std::invalid_argument listing all violations.
void require_valid(const AtomFieldParams& p);

struct CouplingSpec {
    double mu{0.0};        // dipole matrix element
    double omega{1.0};     // field / transition angular frequency
    double epsilon0{1.0};
    double V{1.0};         // mode volume
};

// g = mu * sqrt(hbar * omega / (epsilon0 * V)) with hbar = 1.
double coupling_from_dipole(const CouplingSpec& spec);

// Populations and the three stored coherences of the rotating-frame state.
// Coherences are stored lower-index-first (J13, J23, J12); the partners
// J31 = conj(J13) etc. are implicit, so hermiticity holds structurally.
struct CoherenceState {
    double J11{0.0};
    double J22{0.0};
    double J33{0.0};
    complex J13{};
    complex J23{};
    complex J12{};

    [[nodiscard]] double Delta13() const noexcept { return J11 - J33; }
    [[nodiscard]] double Delta23() const noexcept { return J22 - J33; }
    [[nodiscard]] double trace() const noexcept { return J11 + J22 + J33; }

    // All population in level 1.
    [[nodiscard]] static CoherenceState ground1() {
        CoherenceState s;
        s.J11 = 1.0;
        return s;
    }

    // Pure state c1|1> + c2|2> + c3|3>, J_nm = c_n conj(c_m).
    [[nodiscard]] static CoherenceState from_amplitudes(complex c1, complex c2, complex c3);

    bool operator==(const CoherenceState&) const = default;
};

// Rotating-frame field amplitudes, a = ax - i ay for each field.
struct FieldState {
    double a1x{0.0};
    double a1y{0.0};
    double a2x{0.0};
    double a2y{0.0};

    // Canonical frame: control amplitude real (a1y = 0).
    [[nodiscard]] static FieldState canonical(double a1x, double a2x, double a2y) {
        return FieldState{a1x, 0.0, a2x, a2y};
    }
    [[nodiscard]] static FieldState general(double a1x, double a1y, double a2x, double a2y) {
        return FieldState{a1x, a1y, a2x, a2y};
    }

    [[nodiscard]] complex a1() const noexcept { return {a1x, -a1y}; }
    [[nodiscard]] complex a2() const noexcept { return {a2x, -a2y}; }
    [[nodiscard]] bool is_canonical() const noexcept { return a1y == 0.0; }

    bool operator==(const FieldState&) const = default;
};

}  // namespace lambdatrap
