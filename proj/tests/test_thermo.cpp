#include <catch2/catch_amalgamated.hpp>

#include "mhdinv/eos.hpp"

using namespace mhdinv;

TEST_CASE("pressure closure matches the closed form", "[thermo]") {
    Eos eos;
    eos.gamma = 1.4;
    eos.cv = 0.7;
    eos.s_ref = 0.2;
    double rho = 1.3, S = 0.9;
    double expected = std::pow(rho, 1.4) * std::exp((0.9 - 0.2) / 0.7);
    REQUIRE(eos.pressure(rho, S) == Catch::Approx(expected).epsilon(1e-15));
    Thermo t = eos.eval(rho, S);
    REQUIRE(t.eps == Catch::Approx(expected / 0.4).epsilon(1e-15));
    REQUIRE(t.h == Catch::Approx((t.eps + t.p) / rho).epsilon(1e-15));
}

TEST_CASE("first law holds: T = de/dS and p = rho^2 d(e/rho)/drho", "[thermo]") {
    // finite-difference oracle on the specific internal energy e(rho,S) = eps/rho
    Eos eos;
    eos.gamma = 5.0 / 3.0;
    eos.cv = 1.2;
    eos.s_ref = -0.1;
    auto e_spec = [&](double rho, double S) { return eos.eval(rho, S).eps / rho; };

    double rho = 0.8, S = 0.4;
    double dS = 1e-6, dr = 1e-6;
    double T_fd = (e_spec(rho, S + dS) - e_spec(rho, S - dS)) / (2 * dS);
    double p_fd = rho * rho * (e_spec(rho + dr, S) - e_spec(rho - dr, S)) / (2 * dr);
    Thermo t = eos.eval(rho, S);
    REQUIRE(t.T == Catch::Approx(T_fd).epsilon(1e-8));
    REQUIRE(t.p == Catch::Approx(p_fd).epsilon(1e-8));
}

TEST_CASE("entropy_for_pressure inverts the pressure closure", "[thermo]") {
    Eos eos;
    eos.gamma = 1.9;
    eos.cv = 2.5;
    eos.s_ref = 0.33;
    for (double rho : {0.5, 1.0, 2.7}) {
        for (double p : {0.1, 1.0, 4.2}) {
            double S = eos.entropy_for_pressure(rho, p);
            REQUIRE(eos.pressure(rho, S) == Catch::Approx(p).epsilon(1e-13));
        }
    }
}

TEST_CASE("sound speed squared is gamma p over rho", "[thermo]") {
    Eos eos;
    double rho = 1.7, S = 0.25;
    REQUIRE(eos.cs2(rho, S) ==
            Catch::Approx(eos.gamma * eos.pressure(rho, S) / rho).epsilon(1e-15));
}

TEST_CASE("nonpositive density is rejected", "[thermo]") {
    Eos eos;
    REQUIRE_THROWS_AS(eos.eval(0.0, 0.0), std::domain_error);
    REQUIRE_THROWS_AS(eos.eval(-1.0, 0.0), std::domain_error);
}

TEST_CASE("pressure_field evaluates pointwise", "[thermo]") {
    Eos eos;
    Grid g = make_grid(8, 1, 1, 1.0, 1.0, 1.0, 2);
    ScalarField rho(g), S(g);
    for (int i = 0; i < 8; ++i) {
        rho.v[i] = 1.0 + 0.1 * i;
        S.v[i] = 0.05 * i;
    }
    ScalarField p = pressure_field(eos, rho, S);
    for (int i = 0; i < 8; ++i)
        REQUIRE(p.v[i] == eos.pressure(rho.v[i], S.v[i]));
}
