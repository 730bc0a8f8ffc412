// Maxwell-Bloch right-hand sides for the Lambda system.
//
// The complex form (mbe_rhs) is the ground truth. The real-component form
// splits every stored coherence as J_nm = Jx - i Jy (n > m), which for the
// lower-index-first storage means Jx = Re(J13), Jy = Im(J13) and so on.

#pragma once

#include <string_view>

#include "lambdatrap/lambda_model.hpp"

namespace lambdatrap {

// Time derivative of a CoherenceState; same layout.
using CoherenceRate = CoherenceState;

// d/dt of every component, exactly the complex equations with phenomenological
// decay. The signal phase must already be folded into f.
CoherenceRate mbe_rhs(const CoherenceState& s, const FieldState& f, const AtomFieldParams& p);

struct RealComponentState {
    double J11{0.0};
    double J22{0.0};
    double J33{0.0};
    double Jx12{0.0};
    double Jy12{0.0};
    double Jx13{0.0};
    double Jy13{0.0};
    double Jx23{0.0};
    double Jy23{0.0};

    [[nodiscard]] double Jz12() const noexcept { return J11 - J22; }
    [[nodiscard]] double Jz13() const noexcept { return J11 - J33; }
    [[nodiscard]] double Jz23() const noexcept { return J22 - J33; }

    bool operator==(const RealComponentState&) const = default;
};

RealComponentState decompose(const CoherenceState& s) noexcept;
CoherenceState recompose(const RealComponentState& r) noexcept;

// Rates of (Jx, Jy, Jz) for one transition pair.
struct PairRates {
    double x{0.0};
    double y{0.0};
    double z{0.0};
};

struct ComponentRates {
    PairRates p12;
    PairRates p13;
    PairRates p23;
};

enum class ComponentVariant {
    derived,        // real/imaginary split of mbe_rhs
    paper_verbatim  // the printed component equations, control taken real
};

// Pair-wise rates including the three population-difference (Jz) rates.
ComponentRates component_rates(const RealComponentState& s, const FieldState& f,
                               const AtomFieldParams& p, ComponentVariant variant);

// Populations from the Jz13/Jz23 rates closed by trace conservation.
void populations_from_inversions(double dJz13, double dJz23, RealComponentState& out) noexcept;

RealComponentState component_rhs(const RealComponentState& s, const FieldState& f,
                                 const AtomFieldParams& p, ComponentVariant variant);

// Signal amplitude of magnitude a2_mag rotating at Delta in the control frame:
// (a2x, a2y) = a2_mag * (cos Delta t, sin Delta t).
struct SignalComponents {
    double a2x{0.0};
    double a2y{0.0};
};
SignalComponents rotating_signal_field(double a2_mag, double Delta, double t);

std::string_view to_string(ComponentVariant v) noexcept;

}  // namespace lambdatrap
