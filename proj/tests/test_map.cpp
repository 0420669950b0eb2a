#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mhdinv/lagrange_map.hpp"
#include "mhdinv/reduce.hpp"
#include "mhdinv/scenario.hpp"
#include "mhdinv/stepper.hpp"

using namespace mhdinv;

TEST_CASE("cofactor identity: A F^T = det(F) I", "[map]") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Mat3 F;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) F(r, c) = (r == c ? 1.0 : 0.0) + 0.3 * u(rng);
        Mat3 A = cofactor(F);
        double J = det(F);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += A(r, k) * F(c, k);
                REQUIRE(s == Catch::Approx(r == c ? J : 0.0).margin(1e-13));
            }
    }
}

TEST_CASE("identity map reconstructs the initial state bitwise", "[map]") {
    Scenario sc;
    sc.nx = 24;
    sc.ny = 24;
    Grid g = scenario_grid(sc);
    MhdState s = make_initial_state(sc, g);
    LagrangianMap m = make_map(g, 2);
    LabelData ld = make_label_data(m, s);
    Interpolator itp = map_interpolator(m, g);
    SampledState at = sample_state_at(s, itp);
    MapReconstruction r = map_reconstruct(m, ld, sc.eos, at);
    for (std::size_t n = 0; n < m.size(); ++n) {
        REQUIRE(r.J.v[n] == 1.0);
        REQUIRE(r.rho.v[n] == s.rho.v[n]);
        REQUIRE(r.S.v[n] == s.S.v[n]);
        REQUIRE(r.B.x[n] == s.B.x[n]);
        REQUIRE(r.B.y[n] == s.B.y[n]);
        REQUIRE(r.B.z[n] == s.B.z[n]);
    }
    // identity geometry: cofactors are the identity, Piola residual is zero
    MapGeometry geo = map_geometry(m);
    REQUIRE(linf(piola_residual(m, geo)) == 0.0);
}

TEST_CASE("advection preset: tracers translate and F stays the identity", "[map]") {
    Scenario sc;
    sc.preset = "advection";
    sc.nx = 48;
    sc.ny = 16;
    Grid g = scenario_grid(sc);
    MhdState s = make_initial_state(sc, g);
    LagrangianMap m = make_map(g, 2);
    double t_end = 0.3;
    int nstep = step_count(s, sc.eos, 0.4, t_end);
    double dt = t_end / nstep;
    for (int k = 0; k < nstep; ++k) s = rk4_step(s, sc.eos, dt, {&m});
    for (std::size_t n = 0; n < m.size(); ++n) {
        // u = x_hat: x(t) = x0 + t, y and z unmoved
        std::size_t i = n % g.nx;
        REQUIRE(m.px[n] == Catch::Approx(g.x((int)i) + t_end).margin(1e-12));
        REQUIRE(m.py[n] == Catch::Approx(g.y((int)((n / g.nx) % g.ny))).margin(1e-12));
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                REQUIRE(m.F[n](r, c) == Catch::Approx(r == c ? 1.0 : 0.0).margin(1e-12));
    }
}

TEST_CASE("one short step gives F close to I + dt grad u", "[map]") {
    Scenario sc;
    sc.nx = 48;
    sc.ny = 48;
    Grid g = scenario_grid(sc);
    MhdState s = make_initial_state(sc, g);
    auto f_err = [&](double dt) {
        LagrangianMap m = make_map(g, 2);
        rk4_step(s, sc.eos, dt, {&m});
        std::array<ScalarField, 9> gu;
        for (int c = 0; c < 3; ++c) {
            ScalarField comp(g);
            comp.v = (c == 0) ? s.u.x : (c == 1) ? s.u.y : s.u.z;
            VectorField gc = gradient(comp);
            gu[3 * c + 0] = ScalarField(g, gc.x);
            gu[3 * c + 1] = ScalarField(g, gc.y);
            gu[3 * c + 2] = ScalarField(g, gc.z);
        }
        double e = 0.0;
        for (std::size_t n = 0; n < m.size(); ++n)
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) {
                    double expect = (r == c ? 1.0 : 0.0) + dt * gu[3 * r + c].v[n];
                    e = std::max(e, std::abs(m.F[n](r, c) - expect));
                }
        return e;
    };
    // F - (I + dt grad u) = O(dt^2): quartering dt cuts the defect ~16x
    double e1 = f_err(0.02);
    double e2 = f_err(0.005);
    REQUIRE(e1 / e2 > 10.0);
}

TEST_CASE("reconstruction mismatch at tracers shrinks under grid refinement",
          "[map]") {
    auto mismatch = [](int n) {
        Scenario sc;
        sc.nx = n;
        sc.ny = n;
        Grid g = scenario_grid(sc);
        MhdState s0 = make_initial_state(sc, g);
        MhdState s = s0;
        LagrangianMap m = make_map(g, 2);
        LabelData ld = make_label_data(m, s0);
        double t_end = 0.05;
        int steps = step_count(s0, sc.eos, 0.4, t_end);
        double dt = t_end / steps;
        for (int k = 0; k < steps; ++k) s = rk4_step(s, sc.eos, dt, {&m});
        Interpolator itp = map_interpolator(m, g);
        SampledState at = sample_state_at(s, itp);
        MapReconstruction r = map_reconstruct(m, ld, sc.eos, at);
        double e = 0.0;
        for (std::size_t k = 0; k < m.size(); ++k) {
            e = std::max(e, std::abs(r.rho.v[k] - at.rho[k]));
            e = std::max(e, std::abs(r.S.v[k] - at.S[k]));
        }
        return e;
    };
    // interpolation plus time error, both at least third order in h under CFL
    double e1 = mismatch(32);
    double e2 = mismatch(64);
    REQUIRE(e1 / e2 > 6.0);
    REQUIRE(e1 < 1e-4);
}

TEST_CASE("tracer clouds reject label-grid geometry calls", "[map]") {
    LagrangianMap cloud = make_tracers({Vec3{0.1, 0.2, 0.0}, Vec3{0.4, 0.5, 0.0}});
    REQUIRE(cloud.size() == 2);
    REQUIRE_THROWS(map_geometry(cloud));
}

TEST_CASE("label data and frame rebind initial fields to the label grid", "[map]") {
    Scenario sc;
    sc.nx = 16;
    sc.ny = 16;
    Grid g = scenario_grid(sc);
    MhdState s = make_initial_state(sc, g);
    LagrangianMap m = make_map(g, 2);
    LabelData ld = make_label_data(m, s);
    REQUIRE(ld.rho0.v == s.rho.v);
    REQUIRE(ld.B0.y == s.B.y);
    REQUIRE(ld.rho0.grid.order == 2);
    LabelFrame fr = make_label_frame(m, s);
    REQUIRE(fr.psi.f.v == s.label("psi").f.v);
    REQUIRE(fr.chi.name == "chi");
    // extent mismatch is rejected
    Scenario sc2 = sc;
    sc2.nx = 32;
    MhdState s2 = make_initial_state(sc2, scenario_grid(sc2));
    REQUIRE_THROWS(make_label_data(m, s2));
}
