// Classical RK4 for the Eulerian state, optionally coupled to any number of
// Lagrangian maps / tracer clouds sharing the stage states:
//   dx/dt = u(x, t),   dF/dt = (grad u)(x, t) . F.
#pragma once

#include "lagrange_map.hpp"

namespace mhdinv {

namespace detail {

inline std::vector<double> axpy(const std::vector<double>& a, double c,
                                const std::vector<double>& b) {
    std::vector<double> r(a.size());
    for (std::size_t n = 0; n < a.size(); ++n) r[n] = a[n] + c * b[n];
    return r;
}

}  // namespace detail

inline MhdState state_axpy(const MhdState& s, double c, const Tendency& k, double t_new) {
    MhdState r;
    r.grid = s.grid;
    r.t = t_new;
    r.rho = ScalarField(s.grid, detail::axpy(s.rho.v, c, k.rho.v));
    r.S = ScalarField(s.grid, detail::axpy(s.S.v, c, k.S.v));
    r.u = VectorField(s.grid);
    r.u.x = detail::axpy(s.u.x, c, k.u.x);
    r.u.y = detail::axpy(s.u.y, c, k.u.y);
    r.u.z = detail::axpy(s.u.z, c, k.u.z);
    r.B = VectorField(s.grid);
    r.B.x = detail::axpy(s.B.x, c, k.B.x);
    r.B.y = detail::axpy(s.B.y, c, k.B.y);
    r.B.z = detail::axpy(s.B.z, c, k.B.z);
    require(s.labels.size() == k.labels.size(), "state_axpy: label count mismatch");
    r.labels.reserve(s.labels.size());
    for (std::size_t l = 0; l < s.labels.size(); ++l)
        r.labels.push_back(Label{s.labels[l].name,
                                 ScalarField(s.grid, detail::axpy(s.labels[l].f.v, c,
                                                                  k.labels[l].v)),
                                 s.labels[l].bg});
    if (s.A) {
        require(static_cast<bool>(k.A), "state_axpy: tendency lacks the A field");
        VectorField a(s.grid);
        a.x = detail::axpy(s.A->x, c, k.A->x);
        a.y = detail::axpy(s.A->y, c, k.A->y);
        a.z = detail::axpy(s.A->z, c, k.A->z);
        r.A = std::move(a);
    }
    r.Phi = s.Phi;
    return r;
}

// k1 + 2 k2 + 2 k3 + k4
inline Tendency rk4_combine(const Tendency& k1, const Tendency& k2, const Tendency& k3,
                            const Tendency& k4) {
    Tendency r = k1;
    auto acc = [](std::vector<double>& out, const std::vector<double>& a,
                  const std::vector<double>& b, const std::vector<double>& c) {
        for (std::size_t n = 0; n < out.size(); ++n) out[n] += 2.0 * a[n] + 2.0 * b[n] + c[n];
    };
    acc(r.rho.v, k2.rho.v, k3.rho.v, k4.rho.v);
    acc(r.S.v, k2.S.v, k3.S.v, k4.S.v);
    for (int c = 0; c < 3; ++c) {
        acc(r.u.comp(c), k2.u.comp(c), k3.u.comp(c), k4.u.comp(c));
        acc(r.B.comp(c), k2.B.comp(c), k3.B.comp(c), k4.B.comp(c));
    }
    for (std::size_t l = 0; l < r.labels.size(); ++l)
        acc(r.labels[l].v, k2.labels[l].v, k3.labels[l].v, k4.labels[l].v);
    if (r.A)
        for (int c = 0; c < 3; ++c) acc(r.A->comp(c), k2.A->comp(c), k3.A->comp(c), k4.A->comp(c));
    return r;
}

namespace detail {

// Per-map stage derivative: tracer velocities and dF = (grad u) F.
struct MapSlope {
    std::vector<double> vx, vy, vz;
    std::vector<Mat3> dF;
};

// gu[3*i + k] = d u_i / d x_k on the Eulerian grid of `s`.
inline std::array<ScalarField, 9> velocity_gradient(const MhdState& s) {
    std::array<ScalarField, 9> gu;
    for (int i = 0; i < 3; ++i) {
        ScalarField ui(s.grid, s.u.comp(i));
        for (int k = 0; k < 3; ++k) gu[3 * i + k] = derivative(ui, k);
    }
    return gu;
}

inline MapSlope map_slope(const MhdState& s, const std::array<ScalarField, 9>& gu,
                          const std::vector<double>& px, const std::vector<double>& py,
                          const std::vector<double>& pz, const std::vector<Mat3>& F) {
    Interpolator itp(s.grid, px, py, pz);
    MapSlope sl;
    itp.sample(s.u, sl.vx, sl.vy, sl.vz);
    std::array<std::vector<double>, 9> g;
    for (int c = 0; c < 9; ++c) g[c] = itp.sample(gu[c]);
    sl.dF.resize(F.size());
    for (std::size_t n = 0; n < F.size(); ++n) {
        Mat3 G;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) G(i, k) = g[3 * i + k][n];
        sl.dF[n] = matmul(G, F[n]);
    }
    return sl;
}

inline void map_stage_advance(const LagrangianMap& base, const MapSlope& sl, double c,
                              std::vector<double>& px, std::vector<double>& py,
                              std::vector<double>& pz, std::vector<Mat3>& F) {
    px = axpy(base.px, c, sl.vx);
    py = axpy(base.py, c, sl.vy);
    pz = axpy(base.pz, c, sl.vz);
    F.resize(base.F.size());
    for (std::size_t n = 0; n < F.size(); ++n) F[n] = base.F[n] + c * sl.dF[n];
}

}  // namespace detail

// One RK4 step of the state and, in lockstep, of every map in `maps`. Throws
// if the step blows up (10x growth of any primary field's sup norm).
inline MhdState rk4_step(const MhdState& s, const Eos& eos, double dt,
                         const std::vector<LagrangianMap*>& maps = {}) {
    require(dt > 0.0, "rk4_step: dt must be positive");
    const std::size_t nm = maps.size();

    std::vector<detail::MapSlope> sl1(nm), sl2(nm), sl3(nm), sl4(nm);
    std::vector<std::vector<double>> spx(nm), spy(nm), spz(nm);
    std::vector<std::vector<Mat3>> sF(nm);

    auto stage_maps = [&](const MhdState& stage, std::vector<detail::MapSlope>& out, bool first) {
        if (nm == 0) return;
        std::array<ScalarField, 9> gu = detail::velocity_gradient(stage);
        for (std::size_t m = 0; m < nm; ++m)
            out[m] = first ? detail::map_slope(stage, gu, maps[m]->px, maps[m]->py, maps[m]->pz,
                                               maps[m]->F)
                           : detail::map_slope(stage, gu, spx[m], spy[m], spz[m], sF[m]);
    };
    auto advance_maps = [&](const std::vector<detail::MapSlope>& sl, double c) {
        for (std::size_t m = 0; m < nm; ++m)
            detail::map_stage_advance(*maps[m], sl[m], c, spx[m], spy[m], spz[m], sF[m]);
    };

    Tendency k1 = mhd_rhs(s, eos);
    stage_maps(s, sl1, true);

    advance_maps(sl1, 0.5 * dt);
    MhdState s2 = state_axpy(s, 0.5 * dt, k1, s.t + 0.5 * dt);
    Tendency k2 = mhd_rhs(s2, eos);
    stage_maps(s2, sl2, false);

    advance_maps(sl2, 0.5 * dt);
    MhdState s3 = state_axpy(s, 0.5 * dt, k2, s.t + 0.5 * dt);
    Tendency k3 = mhd_rhs(s3, eos);
    stage_maps(s3, sl3, false);

    advance_maps(sl3, dt);
    MhdState s4 = state_axpy(s, dt, k3, s.t + dt);
    Tendency k4 = mhd_rhs(s4, eos);
    stage_maps(s4, sl4, false);

    Tendency kc = rk4_combine(k1, k2, k3, k4);
    MhdState out = state_axpy(s, dt / 6.0, kc, s.t + dt);

    auto grew = [](double before, double after) { return after > 10.0 * before && after > 1e-8; };
    require(!grew(linf(s.rho), linf(out.rho)) && !grew(linf(s.u), linf(out.u)) &&
                !grew(linf(s.B), linf(out.B)),
            "rk4_step: unstable step at t = " + std::to_string(s.t) +
                " (sup norm grew more than 10x)");
    check_state(out);

    for (std::size_t m = 0; m < nm; ++m) {
        LagrangianMap& mp = *maps[m];
        const double c = dt / 6.0;
        for (std::size_t n = 0; n < mp.size(); ++n) {
            mp.px[n] += c * (sl1[m].vx[n] + 2.0 * sl2[m].vx[n] + 2.0 * sl3[m].vx[n] + sl4[m].vx[n]);
            mp.py[n] += c * (sl1[m].vy[n] + 2.0 * sl2[m].vy[n] + 2.0 * sl3[m].vy[n] + sl4[m].vy[n]);
            mp.pz[n] += c * (sl1[m].vz[n] + 2.0 * sl2[m].vz[n] + 2.0 * sl3[m].vz[n] + sl4[m].vz[n]);
            mp.F[n] = mp.F[n] + c * (sl1[m].dF[n] + 2.0 * sl2[m].dF[n] + 2.0 * sl3[m].dF[n] +
                                     sl4[m].dF[n]);
        }
        mp.t = out.t;
    }
    return out;
}

// Fixed step count so every resolution of a sweep lands on the same times:
// dt = t_end / ceil(t_end / (cfl h_min / max signal speed)).
inline int step_count(const MhdState& s, const Eos& eos, double cfl, double t_end) {
    require(t_end > 0.0, "step_count: t_end must be positive");
    double dt0 = stable_dt(s, eos, cfl);
    return std::max(1, static_cast<int>(std::ceil(t_end / dt0 - 1e-12)));
}

}  // namespace mhdinv
