// Relabelling Noether currents in both representations. Label side (on the
// map's label grid, per tracer): density I0 = (grad0 psi x grad0 chi).grad0x.u
// and flux I_j = Vhat_k Pi_ks A_sj + V0_j ell0, with Pi the total-pressure
// stress from the map-reconstructed p and B. Euler side (on the state grid):
// density F0 = rho u.Vhat and the energy-like flux
//   F_j = rho (u.Vhat) u_j + (eps + p + rho Phi + B^2/mu0 - rho u^2/2) Vhat_j
//         - (B.Vhat) B_j / mu0.
// The pushforward map (F0 = I0/J, F_j = (u_j I0 + x_jk I_k)/J) ties the two:
// at t = 0 they agree to round-off, later to interpolation/truncation error.
#pragma once

#include "conservation.hpp"
#include "generator.hpp"
#include "lagrange_map.hpp"

namespace mhdinv {

struct NoetherCurrents {
    ScalarField I0;    // label grid
    VectorField Ivec;  // label grid
    ScalarField F0;    // Eulerian grid
    VectorField Fvec;  // Eulerian grid
    double pushforward_linf = 0.0;
    ConservationReport conservation;  // residual of dF0/dt + div Fvec
};

namespace detail {

inline ScalarField noether_density(const MhdState& s) {
    EulerGenerator gen = euler_generator(s);
    ScalarField F0(s.grid);
    for (std::size_t n = 0; n < s.grid.size(); ++n)
        F0.v[n] = s.rho.v[n] * dot(s.u.at(n), gen.Vhat.at(n));
    return F0;
}

}  // namespace detail

inline NoetherCurrents noether_currents(const LagrangianMap& m, const LabelData& ld,
                                        const StateWindow& w, ResidualMode mode,
                                        const LabelFrame& frame, const Eos& eos) {
    validate_window(w, mode);
    const MhdState& s = *w.center;
    const Grid& g = s.grid;
    const Grid& lg = m.lgrid;
    require(lg.nx == frame.psi.f.grid.nx && lg.ny == frame.psi.f.grid.ny &&
                lg.nz == frame.psi.f.grid.nz,
            "noether_currents: label frame extents differ from the map's label grid");

    NoetherCurrents out;

    // Euler side
    EulerGenerator gen = euler_generator(s);
    out.F0 = ScalarField(g);
    out.Fvec = VectorField(g);
    for (std::size_t n = 0; n < g.size(); ++n) {
        Vec3 u = s.u.at(n), B = s.B.at(n), V = gen.Vhat.at(n);
        double rho = s.rho.v[n];
        Thermo th = eos.eval(rho, s.S.v[n]);
        double phi = s.Phi ? s.Phi->v[n] : 0.0;
        double f0 = rho * dot(u, V);
        out.F0.v[n] = f0;
        double bracket =
            th.eps + th.p + rho * phi + dot(B, B) / eos.mu0 - 0.5 * rho * dot(u, u);
        out.Fvec.set(n, f0 * u + bracket * V - (dot(B, V) / eos.mu0) * B);
    }

    // label side: gradients of the reference label fields at the Eulerian
    // stencil order, so the identity-map limit matches the Euler side exactly
    VectorField gpsi0 = label_gradient(lg, frame.psi, g.order);
    VectorField gchi0 = label_gradient(lg, frame.chi, g.order);
    MapGeometry geo = map_geometry(m);
    Interpolator itp = map_interpolator(m, g);
    SampledState at = sample_state_at(s, itp);
    MapReconstruction rec = map_reconstruct(m, ld, eos, at);

    out.I0 = ScalarField(lg);
    out.Ivec = VectorField(lg);
    std::vector<double> sF0 = itp.sample(out.F0);
    std::vector<double> sFx, sFy, sFz;
    itp.sample(out.Fvec, sFx, sFy, sFz);
    double push_err = 0.0;
    for (std::size_t n = 0; n < lg.size(); ++n) {
        Vec3 W = cross(gpsi0.at(n), gchi0.at(n));
        Vec3 u_tr{at.ux[n], at.uy[n], at.uz[n]};
        Vec3 FW = matvec(m.F[n], W);
        out.I0.v[n] = dot(u_tr, FW);

        double rho0 = ld.rho0.v[n];
        Vec3 Vhat = FW / rho0;
        Vec3 V0 = -W / rho0;
        Vec3 B = rec.B.at(n);
        double ptot = rec.p.v[n] + 0.5 * dot(B, B) / eos.mu0;
        Vec3 I;
        for (int j = 0; j < 3; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 3; ++k)
                for (int c = 0; c < 3; ++c) {
                    double Pi = (k == c ? ptot : 0.0) - B[k] * B[c] / eos.mu0;
                    acc += Vhat[k] * Pi * geo.A[n](c, j);
                }
            I[j] = acc + V0[j] * rec.ell0.v[n];
        }
        out.Ivec.set(n, I);

        double J = geo.J.v[n];
        Vec3 push = (out.I0.v[n] * u_tr + matvec(m.F[n], I)) / J;
        push_err = std::max(push_err, std::abs(out.I0.v[n] / J - sF0[n]));
        push_err = std::max(push_err, std::abs(push.x - sFx[n]));
        push_err = std::max(push_err, std::abs(push.y - sFy[n]));
        push_err = std::max(push_err, std::abs(push.z - sFz[n]));
    }
    out.pushforward_linf = push_err;

    // conservation residual on the Euler side
    ConservationReport rep;
    rep.name = "eq4.35da";
    rep.variant = "noether";
    rep.mode = mode_name(mode);
    rep.side = "euler";
    rep.t = s.t;
    rep.grid = g;
    rep.density = out.F0;
    rep.flux = out.Fvec;
    rep.premise_norms.emplace_back("pushforward_linf", out.pushforward_linf);
    ScalarField ddt(g);
    if (mode == ResidualMode::semi_discrete) {
        VectorField dV = euler_generator_rate(s, *w.tend, gen);
        for (std::size_t n = 0; n < g.size(); ++n) {
            Vec3 u = s.u.at(n), V = gen.Vhat.at(n);
            ddt.v[n] = w.tend->rho.v[n] * dot(u, V) +
                       s.rho.v[n] * dot(w.tend->u.at(n), V) + s.rho.v[n] * dot(u, dV.at(n));
        }
    } else {
        ScalarField fp = detail::noether_density(*w.prev);
        ScalarField fn = detail::noether_density(*w.next);
        for (std::size_t n = 0; n < g.size(); ++n)
            ddt.v[n] = (fn.v[n] - fp.v[n]) / (2.0 * w.dt);
    }
    ScalarField divf = divergence(out.Fvec);
    rep.residual = ScalarField(g);
    for (std::size_t n = 0; n < g.size(); ++n) rep.residual.v[n] = ddt.v[n] + divf.v[n];
    rep.finalize();
    out.conservation = std::move(rep);
    return out;
}

}  // namespace mhdinv
