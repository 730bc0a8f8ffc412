#include "lambdatrap/integrator.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "lambdatrap/bloch_geometry.hpp"
#include "lambdatrap/rk4.hpp"

namespace lambdatrap {

std::string_view to_string(ModelKind m) noexcept {
    switch (m) {
        case ModelKind::full: return "full";
        case ModelKind::reduced: return "reduced";
        case ModelKind::paper_components: return "paper-components";
    }
    return "?";
}

FieldSchedule::FieldSchedule(Envelope a1, Envelope a2, double peak_a1, double peak_a2,
                             double phase_origin)
    : a1_(std::move(a1)), a2_(std::move(a2)), peak_a1_(peak_a1), peak_a2_(peak_a2),
      phase_origin_(phase_origin) {
    if (!a1_ || !a2_) throw std::invalid_argument("FieldSchedule: empty envelope");
    if (!(peak_a1 >= 0.0) || !(peak_a2 >= 0.0) || !std::isfinite(peak_a1) ||
        !std::isfinite(peak_a2))
        throw std::invalid_argument("FieldSchedule: peak amplitudes must be finite and >= 0");
}

FieldSchedule FieldSchedule::constant(double a1, double a2) {
    return FieldSchedule([a1](double) { return a1; }, [a2](double) { return a2; }, a1, a2);
}

FieldSchedule FieldSchedule::rectangular(double a1, double a2, double center, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("FieldSchedule: pulse width must be positive");
    const double half = 0.5 * width;
    auto gate = [center, half](double t) { return std::abs(t - center) <= half; };
    return FieldSchedule([=](double t) { return gate(t) ? a1 : 0.0; },
                         [=](double t) { return gate(t) ? a2 : 0.0; }, a1, a2);
}

FieldSchedule FieldSchedule::shifted(double shift) const {
    return FieldSchedule([env = a1_, shift](double t) { return env(t - shift); },
                         [env = a2_, shift](double t) { return env(t - shift); }, peak_a1_,
                         peak_a2_, phase_origin_ + shift);
}

FieldState FieldSchedule::at(double t, double Delta) const {
    const double a1 = a1_(t);
    const double a2 = a2_(t);
    if (!(a1 >= 0.0) || !(a2 >= 0.0))
        throw std::domain_error("FieldSchedule: envelope returned a negative or NaN magnitude");
    const SignalComponents sig = rotating_signal_field(a2, Delta, t - phase_origin_);
    return FieldState::canonical(a1, sig.a2x, sig.a2y);
}

namespace {
std::string describe_step(const std::string& frequency, double value, double dt) {
    std::ostringstream os;
    os << "step size guard violated: dt * " << frequency << " = " << dt * value << " > "
       << step_guard << " (dt = " << dt << ", " << frequency << " = " << value << ")";
    return os.str();
}

std::string describe_abort(double t) {
    std::ostringstream os;
    os << "non-finite state during integration; last good time " << t;
    return os.str();
}

using Packed = StateArray<9>;

Packed pack(const RealComponentState& r) noexcept {
    return {r.J11, r.J22, r.J33, r.Jx12, r.Jy12, r.Jx13, r.Jy13, r.Jx23, r.Jy23};
}

RealComponentState unpack(const Packed& y) noexcept {
    return {y[0], y[1], y[2], y[3], y[4], y[5], y[6], y[7], y[8]};
}

bool all_finite(const Packed& y) noexcept {
    for (double v : y)
        if (!std::isfinite(v)) return false;
    return true;
}
}  // namespace

StepSizeError::StepSizeError(const std::string& freq, double value, double dt)
    : std::invalid_argument(describe_step(freq, value, dt)), frequency(freq) {}

NumericalAbort::NumericalAbort(double t) : std::runtime_error(describe_abort(t)), last_good_time(t) {}

void check_step_size(const AtomFieldParams& p, const FieldSchedule& sched, double dt) {
    const std::array<std::pair<const char*, double>, 5> rates{{
        {"|delta1|", std::abs(p.delta1)},
        {"|delta1+omega21|", std::abs(p.delta1 + p.omega21)},
        {"4*g1*a1", 4.0 * p.g1 * sched.peak_a1()},
        {"4*g2*a2", 4.0 * p.g2 * sched.peak_a2()},
        {"|Delta|", std::abs(p.Delta)},
    }};
    const auto* fastest = &rates[0];
    for (const auto& r : rates)
        if (r.second > fastest->second) fastest = &r;
    if (dt * fastest->second > step_guard * (1.0 + 1e-12))
        throw StepSizeError(fastest->first, fastest->second, dt);
}

Trajectory integrate(ModelKind model, const CoherenceState& s0, const AtomFieldParams& p,
                     const FieldSchedule& sched, double t0, double t1, double dt) {
    if (!(t1 > t0)) throw std::invalid_argument("integrate: t1 must exceed t0");
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
    require_valid(p);
    check_step_size(p, sched, dt);

    auto rhs = [&](double t, const Packed& y) -> Packed {
        const FieldState f = sched.at(t, p.Delta);
        const RealComponentState r = unpack(y);
        switch (model) {
            case ModelKind::full: return pack(decompose(mbe_rhs(recompose(r), f, p)));
            case ModelKind::reduced: return pack(reduced_rhs(r, f, p));
            case ModelKind::paper_components:
                return pack(component_rhs(r, f, p, ComponentVariant::paper_verbatim));
        }
        return Packed{};
    };

    CoherenceState start = s0;
    if (model == ModelKind::reduced) start.J12 = {};

    const double span = t1 - t0;
    const auto steps = static_cast<std::size_t>(std::ceil(span / dt - 1e-9));

    Trajectory traj;
    traj.metadata = {p, model, dt};
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.fields_at.reserve(steps + 1);

    Packed y = pack(decompose(start));
    traj.times.push_back(t0);
    traj.states.push_back(start);
    traj.fields_at.push_back(sched.at(t0, p.Delta));

    double t = t0;
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t_next = (k == steps) ? t1 : t0 + static_cast<double>(k) * dt;
        const Packed next = rk4_step(rhs, t, y, t_next - t);
        if (!all_finite(next)) throw NumericalAbort(t);
        y = next;
        t = t_next;
        traj.times.push_back(t);
        traj.states.push_back(recompose(unpack(y)));
        traj.fields_at.push_back(sched.at(t, p.Delta));
    }
    return traj;
}

}  // namespace lambdatrap
