// Fluid-relabelling symmetry machinery: the determining equations in label
// and Euler form, the divergence-symmetry combination, the Lagrange
// multipliers in both representations, and the Bianchi-identity residuals.
#pragma once

#include "conservation.hpp"
#include "foliation.hpp"
#include "generator.hpp"
#include "lagrange_map.hpp"

namespace mhdinv {

// Relabelling generator bound to a foliation. perturb adds a constant vector
// to the generator on both sides; any nonzero value breaks the determining
// equations at O(perturb), which the residuals must detect.
struct SymmetryGenerator {
    const Foliation* fol = nullptr;
    std::string psi = "psi", chi = "chi";
    Vec3 perturb{};
};

namespace detail {

inline ConservationReport scalar_residual_report(const char* name, const char* variant,
                                                 const char* side, const StateWindow& w,
                                                 ResidualMode mode, const Grid& g,
                                                 ScalarField res) {
    ConservationReport rep;
    rep.name = name;
    rep.variant = variant;
    rep.mode = mode_name(mode);
    rep.side = side;
    rep.t = w.center->t;
    rep.grid = g;
    rep.residual = std::move(res);
    rep.finalize();
    return rep;
}

}  // namespace detail

// Determining-equation residuals. Label set (time-independent, built from the
// foliation): div0(rho0 V), V.grad0 S0, D_t(rho0 V) (identically zero for a
// label-space generator), curl0(V x B0). Euler set (from the advected
// labels): div(rho Vhat), Vhat.grad S, rho u.(dVhat/dt - Vhat.grad u),
// B.curl(Vhat x B), plus the divergence-symmetry combination.
inline std::vector<ConservationReport> determining_residuals(const StateWindow& w,
                                                             ResidualMode mode,
                                                             const SymmetryGenerator& gen,
                                                             const Eos& eos) {
    validate_window(w, mode);
    require(gen.fol != nullptr, "determining_residuals: generator has no foliation");
    const Foliation& fol = *gen.fol;
    const MhdState& s = *w.center;
    const Grid& g = s.grid;
    const Grid& lg = fol.lgrid;
    std::vector<ConservationReport> out;

    // label side
    {
        VectorField V(lg);
        for (std::size_t n = 0; n < lg.size(); ++n) V.set(n, fol.V0.at(n) + gen.perturb);

        VectorField rv(lg);
        for (std::size_t n = 0; n < lg.size(); ++n) rv.set(n, V.at(n) * fol.rho0.v[n]);
        out.push_back(detail::scalar_residual_report("eq4.34", "div_rho0V", "label", w, mode,
                                                     lg, divergence(rv)));

        VectorField gS0 = gradient(fol.S0);
        ScalarField vs(lg);
        for (std::size_t n = 0; n < lg.size(); ++n) vs.v[n] = dot(V.at(n), gS0.at(n));
        out.push_back(
            detail::scalar_residual_report("eq4.34", "V_grad_S0", "label", w, mode, lg, vs));

        // rho0 V is a pure label-space field: its advective time derivative
        // vanishes identically, perturbed or not
        out.push_back(detail::scalar_residual_report("eq4.34", "Dt_rho0V", "label", w, mode,
                                                     lg, ScalarField(lg)));

        VectorField vxb(lg);
        for (std::size_t n = 0; n < lg.size(); ++n)
            vxb.set(n, cross(V.at(n), fol.B0.at(n)));
        out.push_back(detail::scalar_residual_report("eq4.34", "curl_VxB0", "label", w, mode,
                                                     lg, magnitude(curl(vxb))));
    }

    // Euler side
    EulerGenerator eg = euler_generator(s, gen.psi, gen.chi);
    VectorField Vh(g);
    for (std::size_t n = 0; n < g.size(); ++n) Vh.set(n, eg.Vhat.at(n) + gen.perturb);

    {
        VectorField rv(g);
        for (std::size_t n = 0; n < g.size(); ++n) rv.set(n, Vh.at(n) * s.rho.v[n]);
        out.push_back(detail::scalar_residual_report("eq4.35a", "div_rhoV", "euler", w, mode,
                                                     g, divergence(rv)));
    }

    VectorField gS = gradient(s.S);
    {
        ScalarField vs(g);
        for (std::size_t n = 0; n < g.size(); ++n) vs.v[n] = dot(Vh.at(n), gS.at(n));
        out.push_back(
            detail::scalar_residual_report("eq4.35a", "V_grad_S", "euler", w, mode, g, vs));
    }

    // dVhat/dt - Vhat.grad u, weighted by rho u
    VectorField dVdt(g);
    if (mode == ResidualMode::semi_discrete) {
        dVdt = euler_generator_rate(s, *w.tend, eg, gen.psi, gen.chi);
    } else {
        EulerGenerator ep = euler_generator(*w.prev, gen.psi, gen.chi);
        EulerGenerator en = euler_generator(*w.next, gen.psi, gen.chi);
        for (std::size_t n = 0; n < g.size(); ++n)
            dVdt.set(n, (en.Vhat.at(n) - ep.Vhat.at(n)) / (2.0 * w.dt));
    }
    VectorField advV = advect(s.u, Vh);
    VectorField Vgu = advect(Vh, s.u);
    ScalarField momentum(g);
    VectorField lie(g);
    for (std::size_t n = 0; n < g.size(); ++n) {
        Vec3 d = dVdt.at(n) + advV.at(n) - Vgu.at(n);
        lie.set(n, d);
        momentum.v[n] = s.rho.v[n] * dot(s.u.at(n), d);
    }
    out.push_back(detail::scalar_residual_report("eq4.35b", "momentum", "euler", w, mode, g,
                                                 momentum));

    VectorField vxb(g);
    for (std::size_t n = 0; n < g.size(); ++n) vxb.set(n, cross(Vh.at(n), s.B.at(n)));
    VectorField curl_vxb = curl(vxb);
    {
        ScalarField r(g);
        for (std::size_t n = 0; n < g.size(); ++n) r.v[n] = dot(s.B.at(n), curl_vxb.at(n));
        out.push_back(
            detail::scalar_residual_report("eq4.35c", "induction", "euler", w, mode, g, r));
    }

    // divergence symmetry: div(rho Vhat)(h + Phi - u^2/2) + rho T Vhat.grad S
    // + rho u.(dVhat/dt - Vhat.grad u) + (B/mu0).(-curl(Vhat x B) + Vhat div B)
    {
        VectorField rv(g);
        for (std::size_t n = 0; n < g.size(); ++n) rv.set(n, Vh.at(n) * s.rho.v[n]);
        ScalarField divrv = divergence(rv);
        ScalarField divB = divergence(s.B);
        ScalarField r(g);
        for (std::size_t n = 0; n < g.size(); ++n) {
            Thermo th = eos.eval(s.rho.v[n], s.S.v[n]);
            double phi = s.Phi ? s.Phi->v[n] : 0.0;
            Vec3 u = s.u.at(n), B = s.B.at(n);
            double term1 = divrv.v[n] * (th.h + phi - 0.5 * dot(u, u));
            double term2 = s.rho.v[n] * th.T * dot(Vh.at(n), gS.at(n));
            double term3 = s.rho.v[n] * dot(u, lie.at(n));
            double term4 =
                dot(B, Vh.at(n) * divB.v[n] - curl_vxb.at(n)) / eos.mu0;
            r.v[n] = term1 + term2 + term3 + term4;
        }
        out.push_back(detail::scalar_residual_report("eq4.35aa", "divergence_symmetry",
                                                     "euler", w, mode, g, r));
    }
    return out;
}

// Lagrange multipliers in label form (nu, from the map reconstruction) and
// Euler form (mu, from fields sampled at the tracers), the relabelling source
// Q computed both ways, and the force pullback G = F.(grad0 x)^T.
struct Multipliers {
    ScalarField nu1, nu2;  // 1/2 u^2 - h;  -rho0 T
    VectorField nu3, nu4;  // F^T B / mu0;  -F^T u
    ScalarField mu1, mu2;  // Euler quartet at the tracers
    VectorField mu3, mu4;
    ScalarField Q;        // -(omega.grad psi) rho0 / rho, Eulerian chain
    ScalarField Q_label;  // -eps_ijk (grad0 psi)_i (d u_s/dx0_j) x_sk
    VectorField G;        // force pullback
};

inline Multipliers multipliers_eval(const LagrangianMap& m, const LabelData& ld,
                                    const MhdState& s, const Label& psi0, const Eos& eos,
                                    const std::string& psi = "psi") {
    require(m.size() == m.lgrid.size(), "multipliers_eval: tracer cloud has no label grid");
    const Grid& lg = m.lgrid;
    Interpolator itp = map_interpolator(m, s.grid);
    SampledState at = sample_state_at(s, itp);
    MapReconstruction rec = map_reconstruct(m, ld, eos, at);

    Multipliers out;
    out.nu1 = ScalarField(lg);
    out.nu2 = ScalarField(lg);
    out.nu3 = VectorField(lg);
    out.nu4 = VectorField(lg);
    out.mu1 = ScalarField(lg);
    out.mu2 = ScalarField(lg);
    out.mu3 = VectorField(lg);
    out.mu4 = VectorField(lg);
    out.Q = ScalarField(lg);
    out.Q_label = ScalarField(lg);
    out.G = VectorField(lg);

    for (std::size_t n = 0; n < lg.size(); ++n) {
        Vec3 u{at.ux[n], at.uy[n], at.uz[n]};
        double u2 = dot(u, u);
        Thermo thl = eos.eval(rec.rho.v[n], ld.S0.v[n]);
        out.nu1.v[n] = 0.5 * u2 - thl.h;
        out.nu2.v[n] = -ld.rho0.v[n] * thl.T;
        out.nu3.set(n, matvec_t(m.F[n], rec.B.at(n)) / eos.mu0);
        out.nu4.set(n, -matvec_t(m.F[n], u));

        Vec3 B{at.Bx[n], at.By[n], at.Bz[n]};
        Thermo the = eos.eval(at.rho[n], at.S[n]);
        out.mu1.v[n] = 0.5 * u2 - the.h;
        out.mu2.v[n] = -at.rho[n] * the.T;
        out.mu3.set(n, B / eos.mu0);
        out.mu4.set(n, -u);
    }

    // Q the Eulerian way: -(omega.grad psi) rho0/rho at the tracers
    {
        ScalarField pv = pv_density(s, psi);
        std::vector<double> pv_tr = itp.sample(pv);
        for (std::size_t n = 0; n < lg.size(); ++n)
            out.Q.v[n] = -pv_tr[n] * ld.rho0.v[n] / at.rho[n];
    }

    // Q the label way: -eps_ijk (grad0 psi)_i (du_s/dx0_j) x_sk, label-grid
    // Jacobian of the sampled velocity
    {
        VectorField gpsi0 = label_gradient(lg, psi0);
        VectorField u_l(lg);
        u_l.x = at.ux;
        u_l.y = at.uy;
        u_l.z = at.uz;
        std::array<ScalarField, 9> du;  // du[3*s + j] = d u_s / d x0_j
        for (int c = 0; c < 3; ++c) {
            ScalarField comp(lg, u_l.comp(c));
            for (int j = 0; j < 3; ++j) du[3 * c + j] = derivative(comp, j);
        }
        for (std::size_t n = 0; n < lg.size(); ++n) {
            Mat3 C;  // C_jk = sum_s (du_s/dx0_j) x_sk
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    double acc = 0.0;
                    for (int c = 0; c < 3; ++c) acc += du[3 * c + j].v[n] * m.F[n](c, k);
                    C(j, k) = acc;
                }
            Vec3 gp = gpsi0.at(n);
            double q = 0.0;
            // eps_ijk gp_i C_jk
            q += gp.x * (C(1, 2) - C(2, 1));
            q += gp.y * (C(2, 0) - C(0, 2));
            q += gp.z * (C(0, 1) - C(1, 0));
            out.Q_label.v[n] = -q;
        }
    }

    // G_a = sum_k Force_k x_ka with Force = T grad S + grad(u^2/2 - h) + J x B / rho
    {
        ForceField ff = force_field(s, eos);
        std::vector<double> fx, fy, fz;
        itp.sample(ff.total, fx, fy, fz);
        for (std::size_t n = 0; n < lg.size(); ++n)
            out.G.set(n, matvec_t(m.F[n], Vec3{fx[n], fy[n], fz[n]}));
    }
    return out;
}

// Three maps bracketing the report time, advanced with the same steps as the
// states in a StateWindow.
struct MapWindow {
    const LagrangianMap* prev = nullptr;
    const LagrangianMap* center = nullptr;
    const LagrangianMap* next = nullptr;
};

// Label-side Bianchi residual (snapshot-only):
//   d/dt[rho0 (omega.grad psi)/rho] - div0(G x grad0 psi)
//     + grad0 psi . curl0(E.(grad0 x)^T / rho0)
// with d/dt plain time differencing of label-grid values following the
// tracers, G the force pullback, and E the measured momentum-balance residual
// (included only when include_EL; on-shell it is its own truncation-level
// report and belongs at zero).
inline ConservationReport bianchi_label_residual(const StateWindow& w, const MapWindow& mw,
                                                 const LabelData& ld, const Label& psi0,
                                                 const Eos& eos, bool include_EL = false,
                                                 const std::string& psi = "psi") {
    validate_window(w, ResidualMode::snapshot);
    require(mw.prev && mw.center && mw.next, "bianchi_label_residual: needs a map window");
    const Grid& lg = mw.center->lgrid;

    auto label_density = [&](const MhdState& s, const LagrangianMap& m) {
        Interpolator itp = map_interpolator(m, s.grid);
        ScalarField pv = pv_density(s, psi);
        std::vector<double> pv_tr = itp.sample(pv);
        std::vector<double> rho_tr = itp.sample(s.rho);
        ScalarField out(lg);
        for (std::size_t n = 0; n < lg.size(); ++n)
            out.v[n] = ld.rho0.v[n] * pv_tr[n] / rho_tr[n];
        return out;
    };

    ScalarField dp = label_density(*w.prev, *mw.prev);
    ScalarField dn = label_density(*w.next, *mw.next);
    ScalarField res(lg);
    for (std::size_t n = 0; n < lg.size(); ++n)
        res.v[n] = (dn.v[n] - dp.v[n]) / (2.0 * w.dt);

    const LagrangianMap& m = *mw.center;
    const MhdState& s = *w.center;
    VectorField gpsi0 = label_gradient(lg, psi0);
    {
        ForceField ff = force_field(s, eos);
        Interpolator itp = map_interpolator(m, s.grid);
        std::vector<double> fx, fy, fz;
        itp.sample(ff.total, fx, fy, fz);
        VectorField Gxp(lg);
        for (std::size_t n = 0; n < lg.size(); ++n) {
            Vec3 G = matvec_t(m.F[n], Vec3{fx[n], fy[n], fz[n]});
            Gxp.set(n, cross(G, gpsi0.at(n)));
        }
        ScalarField divG = divergence(Gxp);
        for (std::size_t n = 0; n < lg.size(); ++n) res.v[n] -= divG.v[n];
    }
    if (include_EL) {
        require(w.tend != nullptr, "bianchi_label_residual: off-shell term needs tendencies");
        VectorField E = euler_lagrange_residual(m, ld, s, *w.tend, eos);
        VectorField arg(lg);
        for (std::size_t n = 0; n < lg.size(); ++n)
            arg.set(n, matvec_t(m.F[n], E.at(n)) / ld.rho0.v[n]);
        VectorField c = curl(arg);
        for (std::size_t n = 0; n < lg.size(); ++n) res.v[n] += dot(gpsi0.at(n), c.at(n));
    }

    ConservationReport rep;
    rep.name = "nfa15";
    rep.variant = "bianchi";
    rep.mode = "snapshot";
    rep.side = "label";
    rep.t = s.t;
    rep.grid = lg;
    rep.residual = std::move(res);
    rep.finalize();
    return rep;
}

// Euler-side Bianchi residual: identical to the fullF-variant PV residual,
// reported under its own name.
inline ConservationReport bianchi_euler_residual(const StateWindow& w, ResidualMode mode,
                                                 const Eos& eos,
                                                 const std::string& psi = "psi") {
    ConservationReport rep = pv_residual(w, psi, PvVariant::fullF, mode, eos);
    rep.name = "nfa17";
    rep.variant = "bianchi";
    rep.side = "euler";
    return rep;
}

}  // namespace mhdinv
