#include <catch2/catch_amalgamated.hpp>

#include "mhdinv/reduce.hpp"
#include "mhdinv/scenario.hpp"
#include "mhdinv/stepper.hpp"

using namespace mhdinv;

namespace {

MhdState ot_state(int n) {
    Scenario sc;
    sc.preset = "orszag-tang-25d";
    sc.nx = n;
    sc.ny = n;
    sc.nz = 1;
    return make_initial_state(sc, scenario_grid(sc));
}

}  // namespace

TEST_CASE("stable_dt matches the hand-computed signal speed bound", "[mhd]") {
    // h = 0.1; rho = 1, S = 0 so p = 1, cs = sqrt(5/3); B = (0.6, 0, 0.8), |B| = 1
    // so vA = 1; u = (0.3, 0, 0.4), |u| = 0.5.
    // dt = 0.4 * 0.1 / (0.5 + sqrt(5/3 + 1)) = 0.04 / 2.1329750...
    Grid g = make_grid(64, 1, 1, 6.4, 1.0, 1.0, 4);
    MhdState s = make_state(g);
    for (std::size_t n = 0; n < s.u.x.size(); ++n) {
        s.u.x[n] = 0.3;
        s.u.z[n] = 0.4;
        s.B.x[n] = 0.6;
        s.B.z[n] = 0.8;
    }
    Eos eos;
    double expect = 0.4 * 0.1 / (0.5 + std::sqrt(5.0 / 3.0 + 1.0));
    REQUIRE(stable_dt(s, eos, 0.4) == Catch::Approx(expect).epsilon(1e-14));
    REQUIRE(stable_dt(s, eos, 0.4) == Catch::Approx(0.018753).margin(1e-6));
}

TEST_CASE("uniform state has identically zero tendencies", "[mhd]") {
    Scenario sc;
    sc.preset = "uniform";
    sc.nx = 16;
    sc.ny = 16;
    MhdState s = make_initial_state(sc, scenario_grid(sc));
    Tendency t = mhd_rhs(s, sc.eos);
    REQUIRE(linf(t.rho) == 0.0);
    REQUIRE(linf(t.S) == 0.0);
    REQUIRE(linf(t.u) == 0.0);
    REQUIRE(linf(t.B) == 0.0);
    for (const auto& lt : t.labels) REQUIRE(linf(lt) == 0.0);
}

TEST_CASE("RK4 is fourth order in time: Richardson ratio near 16", "[mhd]") {
    MhdState s0 = ot_state(32);
    Eos eos;
    double t_end = 0.05;
    auto advance = [&](int steps) {
        MhdState s = s0;
        double dt = t_end / steps;
        for (int k = 0; k < steps; ++k) s = rk4_step(s, eos, dt);
        return s;
    };
    MhdState ref = advance(64);
    auto err = [&](const MhdState& s) {
        double e = 0.0;
        for (std::size_t n = 0; n < s.u.x.size(); ++n)
            e = std::max(e, std::abs(s.u.x[n] - ref.u.x[n]));
        return e;
    };
    double e4 = err(advance(4));
    double e8 = err(advance(8));
    double ratio = e4 / e8;
    REQUIRE(ratio > 12.0);
    REQUIRE(ratio < 20.0);
}

TEST_CASE("induction update preserves div B at the discrete level", "[mhd]") {
    MhdState s = ot_state(48);
    Eos eos;
    double b0 = linf(s.B);
    REQUIRE(linf(divergence(s.B)) < 1e-12 * b0);
    double dt = stable_dt(s, eos, 0.4);
    for (int k = 0; k < 5; ++k) s = rk4_step(s, eos, dt);
    REQUIRE(linf(divergence(s.B)) < 1e-11 * b0);
}

TEST_CASE("global diagnostics on a hand-checkable state", "[mhd]") {
    // rho = 2, S = s_ref so p = rho^gamma, u = (1,0,0), B = (0,3,0) over volume V
    Grid g = make_grid(16, 16, 1, 1.0, 2.0, 5.0, 4);
    MhdState s = make_state(g);
    Eos eos;
    for (std::size_t n = 0; n < s.rho.v.size(); ++n) {
        s.rho.v[n] = 2.0;
        s.u.x[n] = 1.0;
        s.B.y[n] = 3.0;
    }
    double V = 1.0 * 2.0 * 5.0;
    Diagnostics d = global_diagnostics(s, eos);
    REQUIRE(d.total_mass == Catch::Approx(2.0 * V).epsilon(1e-13));
    double eps = std::pow(2.0, eos.gamma) / (eos.gamma - 1.0);
    double expect_E = (0.5 * 2.0 * 1.0 + eps + 0.5 * 9.0) * V;
    REQUIRE(d.total_energy == Catch::Approx(expect_E).epsilon(1e-13));
    REQUIRE(d.cross_helicity == Catch::Approx(0.0).margin(1e-13));
    REQUIRE(d.divB_linf == 0.0);
}

TEST_CASE("mass and energy are conserved over a short run", "[mhd]") {
    MhdState s = ot_state(32);
    Eos eos;
    Diagnostics d0 = global_diagnostics(s, eos);
    double dt = stable_dt(s, eos, 0.4);
    for (int k = 0; k < 10; ++k) s = rk4_step(s, eos, dt);
    Diagnostics d1 = global_diagnostics(s, eos);
    REQUIRE(std::abs(d1.total_mass - d0.total_mass) <
            1e-11 * std::abs(d0.total_mass));
    REQUIRE(std::abs(d1.total_energy - d0.total_energy) <
            1e-5 * std::abs(d0.total_energy));
}

TEST_CASE("unstable growth is detected and reported", "[mhd]") {
    MhdState s = ot_state(16);
    Eos eos;
    // grossly over-long step blows up the sup norm
    REQUIRE_THROWS(([&] {
        MhdState q = s;
        for (int k = 0; k < 200; ++k) q = rk4_step(q, eos, 0.5);
        return q;
    })());
}

TEST_CASE("step_count covers t_end with uniform steps", "[mhd]") {
    MhdState s = ot_state(32);
    Eos eos;
    int n = step_count(s, eos, 0.4, 0.2);
    double dt0 = stable_dt(s, eos, 0.4);
    REQUIRE(n == static_cast<int>(std::ceil(0.2 / dt0 - 1e-12)));
    REQUIRE(0.2 / n <= dt0 * (1.0 + 1e-9));
}

TEST_CASE("advection preset transports the label at unit speed", "[mhd]") {
    Scenario sc;
    sc.preset = "advection";
    sc.nx = 64;
    sc.ny = 16;
    MhdState s = make_initial_state(sc, scenario_grid(sc));
    Eos eos = sc.eos;
    double t_end = 0.5;
    int n = step_count(s, eos, 0.4, t_end);
    double dt = t_end / n;
    for (int k = 0; k < n; ++k) s = rk4_step(s, eos, dt);
    const Label& psi = s.label("psi");
    double err = 0.0;
    for (int j = 0; j < s.grid.ny; ++j)
        for (int i = 0; i < s.grid.nx; ++i)
            err = std::max(err, std::abs(psi.f.v[s.grid.index(i, j, 0)] -
                                         std::sin(s.grid.x(i) - t_end)));
    REQUIRE(err < 2e-5);
}
