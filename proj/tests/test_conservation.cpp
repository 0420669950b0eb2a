#include <catch2/catch_amalgamated.hpp>

#include "mhdinv/conservation.hpp"
#include "mhdinv/scenario.hpp"

using namespace mhdinv;

namespace {

MhdState ot_state(int n, bool carry_A = false, bool psi_from_entropy = false,
                  double b_scale = 1.0) {
    Scenario sc;
    sc.preset = "orszag-tang-25d";
    sc.nx = n;
    sc.ny = n;
    sc.carry_A = carry_A;
    sc.psi_from_entropy = psi_from_entropy;
    sc.b_scale = b_scale;
    return make_initial_state(sc, scenario_grid(sc));
}

}  // namespace

TEST_CASE("potential-vorticity density has the right closed form", "[conservation]") {
    // u = (0, 0, sin x) gives omega = (0, -cos x, 0); psi = sin y gives
    // grad psi = (0, cos y, 0); density = -cos x cos y.
    Grid g = make_grid(64, 64, 1, 2 * M_PI, 2 * M_PI, 1.0, 4);
    MhdState s = make_state(g);
    Label psi;
    psi.name = "psi";
    psi.f = ScalarField(g);
    for (int j = 0; j < 64; ++j)
        for (int i = 0; i < 64; ++i) {
            std::size_t n = g.index(i, j, 0);
            s.u.z[n] = std::sin(g.x(i));
            psi.f.v[n] = std::sin(g.y(j));
        }
    s.labels.push_back(psi);
    ScalarField q = pv_density(s, "psi");
    double err = 0.0;
    for (int j = 0; j < 64; ++j)
        for (int i = 0; i < 64; ++i)
            err = std::max(err, std::abs(q.v[g.index(i, j, 0)] +
                                         std::cos(g.x(i)) * std::cos(g.y(j))));
    REQUIRE(err < 1e-5);  // fourth-order stencil at h = 2 pi / 64
}

TEST_CASE("uniform equilibrium yields exactly zero residuals", "[conservation]") {
    Scenario sc;
    sc.preset = "uniform";
    sc.nx = 16;
    sc.ny = 16;
    MhdState s = make_initial_state(sc, scenario_grid(sc));
    Tendency t = mhd_rhs(s, sc.eos);
    StateWindow w = semi_window(s, t);
    for (PvVariant v : {PvVariant::mhd, PvVariant::hydro, PvVariant::fullF}) {
        ConservationReport rep = pv_residual(w, "psi", v, ResidualMode::semi_discrete, sc.eos);
        REQUIRE(rep.norms.linf == 0.0);
    }
    // snapshot mode with a frozen window also vanishes
    StateWindow ws = snapshot_window(s, s, s, 0.01);
    ConservationReport rs =
        pv_residual(ws, "psi", PvVariant::mhd, ResidualMode::snapshot, sc.eos);
    REQUIRE(rs.norms.linf == 0.0);
}

TEST_CASE("advected-gradient identity is bitwise zero in semi-discrete mode",
          "[conservation]") {
    MhdState s = ot_state(32);
    Eos eos;
    Tendency t = mhd_rhs(s, eos);
    StateWindow w = semi_window(s, t);
    VorticityResiduals vr = vorticity_residuals(w, "psi", ResidualMode::semi_discrete, eos);
    REQUIRE(vr.grad_advect.name == std::string("nfa36"));
    REQUIRE(vr.grad_advect.norms.linf == 0.0);
    // the other two identities hold to stencil accuracy, far below field scale
    REQUIRE(vr.momentum_form.norms.linf < 1e-2);
    REQUIRE(vr.vorticity_eq.norms.linf < 1e-1);
}

TEST_CASE("momentum-form identity is exact when F matches the solver force",
          "[conservation]") {
    // nfa34 checks u_t = u x omega - grad(u^2/2) + F against the assembled
    // tendency; the defect is pure stencil noise on the product expansions.
    MhdState s = ot_state(48);
    Eos eos;
    Tendency t = mhd_rhs(s, eos);
    VorticityResiduals a =
        vorticity_residuals(semi_window(s, t), "psi", ResidualMode::semi_discrete, eos);
    MhdState s2 = ot_state(96);
    Tendency t2 = mhd_rhs(s2, eos);
    VorticityResiduals b =
        vorticity_residuals(semi_window(s2, t2), "psi", ResidualMode::semi_discrete, eos);
    REQUIRE(b.momentum_form.norms.linf < a.momentum_form.norms.linf);
}

TEST_CASE("re-adding the dropped curl term only shifts residuals by round-off",
          "[conservation]") {
    MhdState s = ot_state(32);
    Eos eos;
    Tendency t = mhd_rhs(s, eos);
    StateWindow w = semi_window(s, t);
    ConservationReport plain =
        pv_residual(w, "psi", PvVariant::mhd, ResidualMode::semi_discrete, eos, false);
    ConservationReport with =
        pv_residual(w, "psi", PvVariant::mhd, ResidualMode::semi_discrete, eos, true);
    double scale = std::max(1.0, linf(plain.density));
    double diff = 0.0;
    for (std::size_t n = 0; n < plain.residual.size(); ++n)
        diff = std::max(diff, std::abs(plain.residual.v[n] - with.residual.v[n]));
    REQUIRE(diff < 1e-11 * scale);
}

TEST_CASE("curl-form system reproduces the mhd variant pointwise", "[conservation]") {
    MhdState s = ot_state(32);
    Eos eos;
    Tendency t = mhd_rhs(s, eos);
    StateWindow w = semi_window(s, t);
    ConservationReport pv =
        pv_residual(w, "psi", PvVariant::mhd, ResidualMode::semi_discrete, eos);
    ConservationReport ch =
        cheviakov_residual(w, canonical_cheviakov("psi"), ResidualMode::semi_discrete, eos);
    REQUIRE(ch.name == std::string("eq1.5"));
    double dscale = linf(pv.density), fscale = linf(pv.flux), rscale = linf(pv.residual);
    double dd = 0.0, dr = 0.0;
    for (std::size_t n = 0; n < pv.density.size(); ++n) {
        dd = std::max(dd, std::abs(pv.density.v[n] - ch.density.v[n]));
        dr = std::max(dr, std::abs(pv.residual.v[n] - ch.residual.v[n]));
    }
    double df = 0.0;
    for (std::size_t n = 0; n < pv.flux.x.size(); ++n) {
        df = std::max(df, std::abs(pv.flux.x[n] - ch.flux.x[n]));
        df = std::max(df, std::abs(pv.flux.y[n] - ch.flux.y[n]));
        df = std::max(df, std::abs(pv.flux.z[n] - ch.flux.z[n]));
    }
    REQUIRE(dd <= 1e-12 * dscale);
    REQUIRE(df <= 1e-12 * fscale);
    REQUIRE(dr <= 1e-12 * std::max(rscale, 1e-30));
    // curl-form structure: div N vanishes to round-off
    bool saw = false;
    for (const auto& [k, v] : ch.premise_norms)
        if (k == "div_N_linf") {
            saw = true;
            REQUIRE(v < 1e-11 * std::max(1.0, linf(s.u)));
        }
    REQUIRE(saw);
}

TEST_CASE("hydro variant records its premises", "[conservation]") {
    Eos eos;
    {
        // chi is not an entropy function here, so both premises are violated
        MhdState s = ot_state(24);
        Tendency t = mhd_rhs(s, eos);
        ConservationReport rep = pv_residual(semi_window(s, t), "chi", PvVariant::hydro,
                                             ResidualMode::semi_discrete, eos);
        double bl = -1.0, cl = -1.0;
        for (const auto& [k, v] : rep.premise_norms) {
            if (k == "B_linf") bl = v;
            if (k == "gradpsi_cross_gradS_linf") cl = v;
        }
        REQUIRE(bl > 0.5);  // premises are violated and flagged, not hidden
        REQUIRE(cl > 1e-3);
    }
    {
        // B = 0 and psi seeded from entropy: both premises hold exactly
        MhdState s = ot_state(24, false, true, 0.0);
        Tendency t = mhd_rhs(s, eos);
        ConservationReport rep = pv_residual(semi_window(s, t), "psi", PvVariant::hydro,
                                             ResidualMode::semi_discrete, eos);
        for (const auto& [k, v] : rep.premise_norms) REQUIRE(v == 0.0);
    }
}

TEST_CASE("entropy-seeded label stays bitwise equal to entropy", "[conservation]") {
    Eos eos;
    MhdState s = ot_state(24, false, true, 0.0);
    REQUIRE(s.label("psi").f.v == s.S.v);
    double dt = stable_dt(s, eos, 0.4);
    for (int k = 0; k < 5; ++k) s = rk4_step(s, eos, dt);
    REQUIRE(s.label("psi").f.v == s.S.v);
}

TEST_CASE("material invariants are reported for the carried potential",
          "[conservation]") {
    Eos eos;
    MhdState s = ot_state(48, true);
    REQUIRE(s.A.has_value());
    // the carried potential really is a potential for B at stencil accuracy
    VectorField cA = curl(*s.A);
    double e = 0.0;
    for (std::size_t n = 0; n < cA.x.size(); ++n) {
        e = std::max(e, std::abs(cA.x[n] - s.B.x[n]));
        e = std::max(e, std::abs(cA.y[n] - s.B.y[n]));
        e = std::max(e, std::abs(cA.z[n] - s.B.z[n]));
    }
    REQUIRE(e < 1e-3);  // stencil truncation of the sin 2x mode at 48 points

    Tendency t = mhd_rhs(s, eos);
    auto reps = advected_invariant_residuals(semi_window(s, t),
                                             ResidualMode::semi_discrete, eos);
    REQUIRE(reps.size() == 3);
    REQUIRE(reps[0].variant == std::string("psi1"));
    REQUIRE(reps[1].variant == std::string("psi2"));
    REQUIRE(reps[2].variant == std::string("psi3"));
    for (const auto& r : reps) {
        REQUIRE(r.name == std::string("nfa31"));
        REQUIRE(std::isfinite(r.norms.linf));
    }
    // without the potential only the entropy-gradient invariant is available
    MhdState s0 = ot_state(24, false);
    Tendency t0 = mhd_rhs(s0, eos);
    auto reps0 = advected_invariant_residuals(semi_window(s0, t0),
                                              ResidualMode::semi_discrete, eos);
    REQUIRE(reps0.size() == 1);
}

TEST_CASE("snapshot windows validate their inputs", "[conservation]") {
    MhdState s = ot_state(16);
    Eos eos;
    StateWindow bad;
    bad.center = &s;
    REQUIRE_THROWS(pv_residual(bad, "psi", PvVariant::mhd, ResidualMode::snapshot, eos));
    REQUIRE_THROWS(pv_residual(bad, "psi", PvVariant::mhd, ResidualMode::semi_discrete, eos));
}
