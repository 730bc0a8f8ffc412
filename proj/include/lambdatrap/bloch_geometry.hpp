// The vector picture of the Lambda system.
//
// Each optical transition is treated as a two-level Bloch vector that
// precesses about a Rabi vector, dJ/dt = J x Omega. The reduced dynamics
// drop the 1<->2 coherence and all decay.

#pragma once

#include <array>
#include <string_view>

#include "lambdatrap/lambda_model.hpp"
#include "lambdatrap/mbe_dynamics.hpp"

namespace lambdatrap {

enum class Pair { p13, p23, p12 };

std::string_view to_string(Pair pair) noexcept;

using Vec3 = std::array<double, 3>;

struct BlochVector {
    Pair pair{Pair::p13};
    double Jx{0.0};
    double Jy{0.0};
    double Jz{0.0};

    [[nodiscard]] Vec3 components() const noexcept { return {Jx, Jy, Jz}; }
    [[nodiscard]] double norm2() const noexcept { return Jx * Jx + Jy * Jy + Jz * Jz; }
};

struct RabiVector {
    Pair pair{Pair::p13};
    double Ox{0.0};
    double Oy{0.0};
    double Oz{0.0};

    [[nodiscard]] Vec3 components() const noexcept { return {Ox, Oy, Oz}; }
};

// J x Omega. Throws std::invalid_argument when the pairs differ.
Vec3 precession_rhs(const BlochVector& J, const RabiVector& O);

struct BlochSet {
    BlochVector j13;
    BlochVector j23;
    BlochVector j12;
};

// Jx = Re, Jy = Im of the stored coherence; Jz from population differences.
BlochSet bloch_from_coherences(const CoherenceState& s) noexcept;

// Inverse of bloch_from_coherences given the population trace.
CoherenceState coherences_from_bloch(const BlochSet& b, double trace = 1.0) noexcept;

struct RabiPair {
    RabiVector r13;
    RabiVector r23;
};

// Omega13 = (4 g1 a1x, 0, delta1);
// Omega23 = (4 g2 |a2| cos Delta t, 4 g2 |a2| sin Delta t, delta1 + omega21).
// Requires a canonical field (a1y == 0), else std::invalid_argument.
RabiPair rabi_vectors(const AtomFieldParams& p, const FieldState& f, double t);

// Reduced dynamics: J12 neglected (its rate is zero and its value ignored),
// decay dropped, populations driven through the two inversion equations.
// Requires a canonical field.
RealComponentState reduced_rhs(const RealComponentState& s, const FieldState& f,
                               const AtomFieldParams& p);

struct PrecessionRun {
    BlochVector final_state;
    double max_norm_drift{0.0};  // max | |J(t)| - |J(0)| |
    std::size_t steps{0};
};

// RK4 integration of the precession law about a fixed Rabi vector.
PrecessionRun integrate_precession(const BlochVector& J0, const RabiVector& O, double duration,
                                   double dt);

}  // namespace lambdatrap
