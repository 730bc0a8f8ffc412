// Field schedules and fixed-step RK4 trajectories.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lambdatrap/lambda_model.hpp"
#include "lambdatrap/mbe_dynamics.hpp"

namespace lambdatrap {

enum class ModelKind {
    full,             // complex equations with decay
    reduced,          // J12-free geometric model
    paper_components  // printed component equations
};

std::string_view to_string(ModelKind m) noexcept;

// Field magnitudes as functions of time. The signal phase is not part of the
// schedule state: at(t, Delta) rotates the signal by Delta (t - phase_origin).
class FieldSchedule {
public:
    using Envelope = std::function<double(double)>;

    // peak_a1 / peak_a2 must bound the envelopes; the step-size guard uses them.
    FieldSchedule(Envelope a1, Envelope a2, double peak_a1, double peak_a2,
                  double phase_origin = 0.0);

    static FieldSchedule constant(double a1, double a2);

    // Both fields on for |t - center| <= width / 2, off otherwise.
    static FieldSchedule rectangular(double a1, double a2, double center, double width);

    // Same schedule delayed by `shift` (envelopes and signal phase).
    [[nodiscard]] FieldSchedule shifted(double shift) const;

    [[nodiscard]] FieldState at(double t, double Delta) const;

    [[nodiscard]] double peak_a1() const noexcept { return peak_a1_; }
    [[nodiscard]] double peak_a2() const noexcept { return peak_a2_; }

private:
    Envelope a1_;
    Envelope a2_;
    double peak_a1_;
    double peak_a2_;
    double phase_origin_;
};

struct TrajectoryMetadata {
    AtomFieldParams params;
    ModelKind model{ModelKind::full};
    double dt{0.0};
};

struct Trajectory {
    std::vector<double> times;
    std::vector<CoherenceState> states;
    std::vector<FieldState> fields_at;
    TrajectoryMetadata metadata;

    [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
};

// dt * fastest angular frequency must not exceed this.
inline constexpr double step_guard = 0.1;

class StepSizeError : public std::invalid_argument {
public:
    StepSizeError(const std::string& frequency, double value, double dt);
    std::string frequency;
};

class NumericalAbort : public std::runtime_error {
public:
    explicit NumericalAbort(double last_good_time);
    double last_good_time;
};

// Throws StepSizeError if the guard fails for this schedule and step.
void check_step_size(const AtomFieldParams& p, const FieldSchedule& sched, double dt);

Trajectory integrate(ModelKind model, const CoherenceState& s0, const AtomFieldParams& p,
                     const FieldSchedule& sched, double t0, double t1, double dt);

}  // namespace lambdatrap
