// Cross-checks between the equation forms, emitted as a
// deterministic JSON + text report.
//
// Sections:
//   component-census    printed component equations vs the derived split,
//                       component by component, canonical and general frame
//   derived-vs-complex  derived real split vs the complex equations
//   eq11-eq15-witness   effective-coupling element vs the squared condition
//   rabi-factor-note    reduced dynamics vs the precession law

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lambdatrap/lambda_model.hpp"
#include "lambdatrap/mbe_dynamics.hpp"

namespace lambdatrap::sim {

inline constexpr std::uint64_t default_seed = 20021;
inline constexpr double census_tol = 1e-12;

// Seeded random inputs shared by the report and the tests.
struct RandomCase {
    RealComponentState state;
    FieldState field;
    AtomFieldParams params;
};

std::vector<RandomCase> random_cases(std::uint64_t seed, std::size_t count, bool canonical);

struct CensusEntry {
    std::string term;  // e.g. "dJx13/dt"
    std::string printed_form;
    std::string derived_form;
    double max_deviation{0.0};
    bool disagrees{false};
};

struct CensusResult {
    std::array<CensusEntry, 9> entries;
    std::vector<std::string> disagreeing;
    double inversion_closure{0.0};  // max |dJz12 - (dJz13 - dJz23)| of the printed forms
};

CensusResult component_census(const std::vector<RandomCase>& cases);

// max |component_rhs(derived) - decompose(mbe_rhs)| over the cases.
double derived_vs_complex_deviation(const std::vector<RandomCase>& cases);

struct ValidationReport {
    nlohmann::json json;
    std::string text;
};

ValidationReport build_validation_report(std::uint64_t seed, std::size_t samples = 1000);

std::vector<std::filesystem::path> run_validate(std::uint64_t seed, std::size_t samples,
                                                const std::filesystem::path& dir);

}  // namespace lambdatrap::sim
