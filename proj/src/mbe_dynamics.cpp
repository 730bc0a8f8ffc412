#include "lambdatrap/mbe_dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace lambdatrap {

namespace {
constexpr complex I{0.0, 1.0};
}

CoherenceRate mbe_rhs(const CoherenceState& s, const FieldState& f, const AtomFieldParams& p) {
    const complex a1 = f.a1();
    const complex a2 = f.a2();
    const complex J31 = std::conj(s.J13);
    const complex J32 = std::conj(s.J23);
    const complex J21 = std::conj(s.J12);

    // a J31 - a* J13 is purely imaginary, so the population rates are real.
    const complex pump1 = I * p.g1 * (a1 * J31 - std::conj(a1) * s.J13);
    const complex pump2 = I * p.g2 * (a2 * J32 - std::conj(a2) * s.J23);

    CoherenceRate d;
    d.J33 = -pump1.real() - pump2.real() - (p.Gamma13 + p.Gamma23) * s.J33;
    d.J22 = pump2.real() + p.Gamma23 * s.J33;
    d.J11 = pump1.real() + p.Gamma13 * s.J33;

    d.J13 = I * p.delta1 * s.J13 - I * p.g1 * a1 * s.Delta13() - I * p.g2 * a2 * s.J12
            - p.gamma13 * s.J13;
    d.J23 = I * (p.delta1 + p.omega21) * s.J23 - I * p.g1 * a1 * J21
            - I * p.g2 * a2 * s.Delta23() - p.gamma23 * s.J23;
    d.J12 = I * p.delta2 * s.J12 + I * p.g1 * a1 * J32 - I * p.g2 * std::conj(a2) * s.J13
            - p.gamma12 * s.J12;
    return d;
}

RealComponentState decompose(const CoherenceState& s) noexcept {
    RealComponentState r;
    r.J11 = s.J11;
    r.J22 = s.J22;
    r.J33 = s.J33;
    r.Jx12 = s.J12.real();
    r.Jy12 = s.J12.imag();
    r.Jx13 = s.J13.real();
    r.Jy13 = s.J13.imag();
    r.Jx23 = s.J23.real();
    r.Jy23 = s.J23.imag();
    return r;
}

CoherenceState recompose(const RealComponentState& r) noexcept {
    CoherenceState s;
    s.J11 = r.J11;
    s.J22 = r.J22;
    s.J33 = r.J33;
    s.J12 = {r.Jx12, r.Jy12};
    s.J13 = {r.Jx13, r.Jy13};
    s.J23 = {r.Jx23, r.Jy23};
    return s;
}

void populations_from_inversions(double dJz13, double dJz23, RealComponentState& out) noexcept {
    // dJ11 - dJ33 = dJz13, dJ22 - dJ33 = dJz23, dJ11 + dJ22 + dJ33 = 0
    out.J33 = -(dJz13 + dJz23) / 3.0;
    out.J11 = dJz13 + out.J33;
    out.J22 = dJz23 + out.J33;
}

namespace {

// Hand-derived real and imaginary parts of mbe_rhs.
RealComponentState derived_rhs(const RealComponentState& s, const FieldState& f,
                               const AtomFieldParams& p) {
    const double g1 = p.g1;
    const double g2 = p.g2;
    const double w23 = p.delta1 + p.omega21;
    const double D13 = s.Jz13();
    const double D23 = s.Jz23();

    RealComponentState d;
    d.Jx13 = -p.delta1 * s.Jy13 - g1 * f.a1y * D13 + g2 * (f.a2x * s.Jy12 - f.a2y * s.Jx12)
             - p.gamma13 * s.Jx13;
    d.Jy13 = p.delta1 * s.Jx13 - g1 * f.a1x * D13 - g2 * (f.a2x * s.Jx12 + f.a2y * s.Jy12)
             - p.gamma13 * s.Jy13;

    d.Jx23 = -w23 * s.Jy23 - g1 * (f.a1x * s.Jy12 + f.a1y * s.Jx12) - g2 * f.a2y * D23
             - p.gamma23 * s.Jx23;
    d.Jy23 = w23 * s.Jx23 - g1 * (f.a1x * s.Jx12 - f.a1y * s.Jy12) - g2 * f.a2x * D23
             - p.gamma23 * s.Jy23;

    d.Jx12 = -p.delta2 * s.Jy12 + g1 * (f.a1x * s.Jy23 + f.a1y * s.Jx23)
             + g2 * (f.a2x * s.Jy13 + f.a2y * s.Jx13) - p.gamma12 * s.Jx12;
    d.Jy12 = p.delta2 * s.Jx12 + g1 * (f.a1x * s.Jx23 - f.a1y * s.Jy23)
             - g2 * (f.a2x * s.Jx13 - f.a2y * s.Jy13) - p.gamma12 * s.Jy12;

    const double pump1 = 2.0 * g1 * (f.a1x * s.Jy13 + f.a1y * s.Jx13);
    const double pump2 = 2.0 * g2 * (f.a2x * s.Jy23 + f.a2y * s.Jx23);
    d.J11 = pump1 + p.Gamma13 * s.J33;
    d.J22 = pump2 + p.Gamma23 * s.J33;
    d.J33 = -pump1 - pump2 - (p.Gamma13 + p.Gamma23) * s.J33;
    return d;
}

// The printed component equations, term for term. They assume a real control
// amplitude, so a1y never appears.
ComponentRates paper_rates(const RealComponentState& s, const FieldState& f,
                           const AtomFieldParams& p) {
    const double g1 = p.g1;
    const double g2 = p.g2;
    const double a1x = f.a1x;
    const double w23 = p.delta1 + p.omega21;
    const double D13 = s.Jz13();
    const double D23 = s.Jz23();
    const double signal23 = f.a2x * s.Jy23 + f.a2y * s.Jx23;

    ComponentRates r;
    r.p12.x = g2 * (f.a2x * s.Jy13 + f.a2y * s.Jx13) + g1 * a1x * s.Jy23 - p.delta2 * s.Jy12
              - p.gamma12 * s.Jx12;
    r.p12.y = p.delta2 * s.Jx12 + g1 * a1x * s.Jx23 - g2 * (f.a2x * s.Jx13 - f.a2y * s.Jy13)
              - p.gamma12 * s.Jy12;
    r.p12.z = 2.0 * g1 * a1x * s.Jy13 - 2.0 * g2 * signal23 + (p.Gamma13 - p.Gamma23) * s.J33;

    r.p13.x = g2 * (f.a2x * s.Jy12 - f.a2y * s.Jx12) - p.delta1 * s.Jy13 - p.gamma13 * s.Jx13;
    r.p13.y = p.delta1 * s.Jx13 - g1 * a1x * D13 - g2 * (f.a2x * s.Jx12 + f.a2y * s.Jy12)
              - p.gamma13 * s.Jy13;
    r.p13.z = 4.0 * g1 * a1x * s.Jy13 + 2.0 * g2 * signal23
              + (2.0 * p.Gamma13 + p.Gamma23) * s.J33;

    r.p23.x = -w23 * s.Jy23 - g1 * a1x * s.Jy12 - g2 * f.a2y * D23 - p.gamma23 * s.Jx23;
    r.p23.y = w23 * s.Jx23 - g1 * a1x * s.Jx12 - g2 * f.a2x * D23 - p.gamma23 * s.Jy23;
    r.p23.z = 2.0 * g1 * a1x * s.Jy13 + 4.0 * g2 * signal23
              + (p.Gamma13 + 2.0 * p.Gamma23) * s.J33;
    return r;
}

ComponentRates rates_of(const RealComponentState& d) {
    ComponentRates r;
    r.p12 = {d.Jx12, d.Jy12, d.J11 - d.J22};
    r.p13 = {d.Jx13, d.Jy13, d.J11 - d.J33};
    r.p23 = {d.Jx23, d.Jy23, d.J22 - d.J33};
    return r;
}

}  // namespace

ComponentRates component_rates(const RealComponentState& s, const FieldState& f,
                               const AtomFieldParams& p, ComponentVariant variant) {
    if (variant == ComponentVariant::derived) return rates_of(derived_rhs(s, f, p));
    return paper_rates(s, f, p);
}

RealComponentState component_rhs(const RealComponentState& s, const FieldState& f,
                                 const AtomFieldParams& p, ComponentVariant variant) {
    if (variant == ComponentVariant::derived) return derived_rhs(s, f, p);

    const ComponentRates r = paper_rates(s, f, p);
    RealComponentState d;
    d.Jx12 = r.p12.x;
    d.Jy12 = r.p12.y;
    d.Jx13 = r.p13.x;
    d.Jy13 = r.p13.y;
    d.Jx23 = r.p23.x;
    d.Jy23 = r.p23.y;
    populations_from_inversions(r.p13.z, r.p23.z, d);
    return d;
}

SignalComponents rotating_signal_field(double a2_mag, double Delta, double t) {
    if (a2_mag < 0.0) throw std::invalid_argument("rotating_signal_field: negative amplitude");
    const double phase = Delta * t;
    return {a2_mag * std::cos(phase), a2_mag * std::sin(phase)};
}

std::string_view to_string(ComponentVariant v) noexcept {
    return v == ComponentVariant::derived ? "derived" : "paper-verbatim";
}

}  // namespace lambdatrap
