#include "lambdatrap/bloch_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lambdatrap/rk4.hpp"

namespace lambdatrap {

std::string_view to_string(Pair pair) noexcept {
    switch (pair) {
        case Pair::p13: return "13";
        case Pair::p23: return "23";
        case Pair::p12: return "12";
    }
    return "?";
}

namespace {
Vec3 cross(const Vec3& a, const Vec3& b) noexcept {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
}  // namespace

Vec3 precession_rhs(const BlochVector& J, const RabiVector& O) {
    if (J.pair != O.pair) {
        throw std::invalid_argument("precession_rhs: Bloch vector pair " +
                                    std::string(to_string(J.pair)) + " vs Rabi vector pair " +
                                    std::string(to_string(O.pair)));
    }
    return cross(J.components(), O.components());
}

BlochSet bloch_from_coherences(const CoherenceState& s) noexcept {
    BlochSet b;
    b.j13 = {Pair::p13, s.J13.real(), s.J13.imag(), s.J11 - s.J33};
    b.j23 = {Pair::p23, s.J23.real(), s.J23.imag(), s.J22 - s.J33};
    b.j12 = {Pair::p12, s.J12.real(), s.J12.imag(), s.J11 - s.J22};
    return b;
}

CoherenceState coherences_from_bloch(const BlochSet& b, double trace) noexcept {
    CoherenceState s;
    s.J33 = (trace - b.j13.Jz - b.j23.Jz) / 3.0;
    s.J11 = b.j13.Jz + s.J33;
    s.J22 = b.j23.Jz + s.J33;
    s.J13 = {b.j13.Jx, b.j13.Jy};
    s.J23 = {b.j23.Jx, b.j23.Jy};
    s.J12 = {b.j12.Jx, b.j12.Jy};
    return s;
}

RabiPair rabi_vectors(const AtomFieldParams& p, const FieldState& f, double t) {
    if (!f.is_canonical())
        throw std::invalid_argument("rabi_vectors: control field must be real (a1y == 0)");
    const double a2 = std::hypot(f.a2x, f.a2y);
    const double phase = p.Delta * t;
    RabiPair r;
    r.r13 = {Pair::p13, 4.0 * p.g1 * f.a1x, 0.0, p.delta1};
    r.r23 = {Pair::p23, 4.0 * p.g2 * a2 * std::cos(phase), 4.0 * p.g2 * a2 * std::sin(phase),
             p.delta1 + p.omega21};
    return r;
}

RealComponentState reduced_rhs(const RealComponentState& s, const FieldState& f,
                               const AtomFieldParams& p) {
    if (!f.is_canonical())
        throw std::invalid_argument("reduced_rhs: control field must be real (a1y == 0)");
    const double g1a1 = p.g1 * f.a1x;
    const double w23 = p.delta1 + p.omega21;
    const double signal23 = f.a2x * s.Jy23 + f.a2y * s.Jx23;

    RealComponentState d;
    d.Jx13 = -p.delta1 * s.Jy13;
    d.Jy13 = p.delta1 * s.Jx13 - g1a1 * s.Jz13();
    d.Jx23 = -w23 * s.Jy23 - p.g2 * f.a2y * s.Jz23();
    d.Jy23 = w23 * s.Jx23 - p.g2 * f.a2x * s.Jz23();

    const double dJz13 = 4.0 * g1a1 * s.Jy13 + 2.0 * p.g2 * signal23;
    const double dJz23 = 2.0 * g1a1 * s.Jy13 + 4.0 * p.g2 * signal23;
    populations_from_inversions(dJz13, dJz23, d);
    return d;
}

PrecessionRun integrate_precession(const BlochVector& J0, const RabiVector& O, double duration,
                                   double dt) {
    if (!(duration > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("integrate_precession: duration and dt must be positive");
    if (J0.pair != O.pair) throw std::invalid_argument("integrate_precession: pair mismatch");

    const Vec3 omega = O.components();
    auto rhs = [&](double, const StateArray<3>& y) { return cross(y, omega); };

    const double n0 = std::sqrt(J0.norm2());
    const auto steps = static_cast<std::size_t>(std::ceil(duration / dt - 1e-12));
    StateArray<3> y = J0.components();
    double t = 0.0;
    PrecessionRun run;
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t_next = (k == steps) ? duration : static_cast<double>(k) * dt;
        y = rk4_step(rhs, t, y, t_next - t);
        t = t_next;
        const double n = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
        run.max_norm_drift = std::max(run.max_norm_drift, std::abs(n - n0));
    }
    run.final_state = {J0.pair, y[0], y[1], y[2]};
    run.steps = steps;
    return run;
}

}  // namespace lambdatrap
