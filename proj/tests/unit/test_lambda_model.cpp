#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lambdatrap/lambda_model.hpp"

using namespace lambdatrap;

TEST_CASE("coupling_from_dipole examples") {
    CHECK(coupling_from_dipole({0.0, 1.0, 1.0, 1.0}) == 0.0);
    CHECK(coupling_from_dipole({1.0, 1.0, 1.0, 1.0}) == 1.0);
    CHECK(coupling_from_dipole({1.0, 1.0, 1.0, 4.0}) == 0.5);
}

TEST_CASE("coupling_from_dipole rejects nonpositive omega, epsilon0, V") {
    CHECK_THROWS_AS(coupling_from_dipole({1.0, 0.0, 1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(coupling_from_dipole({1.0, 1.0, -1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(coupling_from_dipole({1.0, 1.0, 1.0, 0.0}), std::domain_error);
}

TEST_CASE("coupling_from_dipole homogeneity in mu and V") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        const CouplingSpec s{u(rng), u(rng), u(rng), u(rng)};
        const double k = u(rng);
        const double g = coupling_from_dipole(s);
        CouplingSpec scaled_mu = s;
        scaled_mu.mu *= k;
        CouplingSpec scaled_v = s;
        scaled_v.V *= k;
        CHECK(coupling_from_dipole(scaled_mu) == doctest::Approx(k * g).epsilon(1e-14));
        CHECK(coupling_from_dipole(scaled_v) == doctest::Approx(g / std::sqrt(k)).epsilon(1e-14));
    }
}

TEST_CASE("validate_params") {
    CHECK(validate_params(AtomFieldParams{}).empty());

    AtomFieldParams p;
    p.g1 = -1.0;
    const auto e1 = validate_params(p);
    REQUIRE(e1.size() == 1);
    CHECK(e1[0] == "g1 negative");

    AtomFieldParams q;
    q.Gamma13 = -0.1;
    q.gamma12 = -0.1;
    CHECK(validate_params(q).size() == 2);
    CHECK_THROWS_AS(require_valid(q), std::invalid_argument);
}

TEST_CASE("delta_nu is Delta over 2 pi") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1e9, 1e9);
    for (int i = 0; i < 1000; ++i) {
        AtomFieldParams p;
        p.Delta = u(rng);
        CHECK(p.delta_nu() * two_pi == doctest::Approx(p.Delta).epsilon(1e-15));
    }
    CHECK(AtomFieldParams::from_delta_nu(1.0).Delta == two_pi);
}

TEST_CASE("CoherenceState population differences") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        CoherenceState s;
        s.J11 = u(rng);
        s.J22 = u(rng);
        s.J33 = u(rng);
        CHECK(s.Delta13() == s.J11 - s.J33);
        CHECK(s.Delta23() == s.J22 - s.J33);
    }
}

TEST_CASE("pure-state construction") {
    const double r = 1.0 / std::sqrt(2.0);
    const auto s = CoherenceState::from_amplitudes({r, 0.0}, {0.0, r}, 0.0);
    CHECK(s.trace() == doctest::Approx(1.0));
    CHECK(s.J12.real() == doctest::Approx(0.0));
    CHECK(s.J12.imag() == doctest::Approx(-0.5));  // c1 conj(c2) = r * (-i r)
    CHECK(s.J13 == complex{});
}

TEST_CASE("FieldState frames") {
    const auto f = FieldState::canonical(2.0, 0.5, 0.25);
    CHECK(f.is_canonical());
    CHECK(f.a1() == complex{2.0, 0.0});
    CHECK(f.a2() == complex{0.5, -0.25});
    CHECK_FALSE(FieldState::general(1.0, 0.1, 0.0, 0.0).is_canonical());
}
