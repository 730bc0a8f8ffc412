#include "lambdatrap/lambda_model.hpp"

#include <cmath>
#include <stdexcept>

namespace lambdatrap {

std::vector<std::string> validate_params(const AtomFieldParams& p) {
    std::vector<std::string> errors;
    auto check_nonneg = [&](double v, const char* name) {
        if (std::isnan(v) || v < 0.0) errors.push_back(std::string(name) + " negative");
    };
    auto check_finite = [&](double v, const char* name) {
        if (!std::isfinite(v)) errors.push_back(std::string(name) + " not finite");
    };

    check_nonneg(p.g1, "g1");
    check_nonneg(p.g2, "g2");
    check_nonneg(p.Gamma13, "Gamma13");
    check_nonneg(p.Gamma23, "Gamma23");
    check_nonneg(p.gamma13, "gamma13");
    check_nonneg(p.gamma23, "gamma23");
    check_nonneg(p.gamma12, "gamma12");

    check_finite(p.delta1, "delta1");
    check_finite(p.delta2, "delta2");
    check_finite(p.omega21, "omega21");
    check_finite(p.Delta, "Delta");
    return errors;
}

void require_valid(const AtomFieldParams& p) {
    const auto errors = validate_params(p);
    if (errors.empty()) return;
    std::string msg = "invalid parameters:";
    for (const auto& e : errors) msg += " " + e + ";";
    throw std::invalid_argument(msg);
}

double coupling_from_dipole(const CouplingSpec& spec) {
    if (!(spec.omega > 0.0)) throw std::domain_error("coupling_from_dipole: omega must be positive");
    if (!(spec.epsilon0 > 0.0)) throw std::domain_error("coupling_from_dipole: epsilon0 must be positive");
    if (!(spec.V > 0.0)) throw std::domain_error("coupling_from_dipole: V must be positive");
    return spec.mu * std::sqrt(spec.omega / (spec.epsilon0 * spec.V));
}

CoherenceState CoherenceState::from_amplitudes(complex c1, complex c2, complex c3) {
    CoherenceState s;
    s.J11 = std::norm(c1);
    s.J22 = std::norm(c2);
    s.J33 = std::norm(c3);
    s.J13 = c1 * std::conj(c3);
    s.J23 = c2 * std::conj(c3);
    s.J12 = c1 * std::conj(c2);
    return s;
}

}  // namespace lambdatrap
