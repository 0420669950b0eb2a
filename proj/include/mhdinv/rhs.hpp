// Ideal-MHD right-hand side in primitive variables, CFL estimate, and global
// diagnostics. The induction update is kept in curl form so the discrete
// div B inherited from the initial data is preserved to round-off.
#pragma once

#include "state.hpp"
#include "reduce.hpp"

namespace mhdinv {

// (a . grad) q for a scalar q
inline ScalarField advect(const VectorField& a, const ScalarField& q) {
    ScalarField dx = derivative(q, 0), dy = derivative(q, 1), dz = derivative(q, 2);
    ScalarField out(q.grid);
    for (std::size_t n = 0; n < out.size(); ++n)
        out.v[n] = a.x[n] * dx.v[n] + a.y[n] * dy.v[n] + a.z[n] * dz.v[n];
    return out;
}

// (a . grad) w for a vector w
inline VectorField advect(const VectorField& a, const VectorField& w) {
    VectorField out(w.grid);
    out.x = advect(a, ScalarField(w.grid, w.x)).v;
    out.y = advect(a, ScalarField(w.grid, w.y)).v;
    out.z = advect(a, ScalarField(w.grid, w.z)).v;
    return out;
}

inline VectorField cross_field(const VectorField& a, const VectorField& b) {
    VectorField out(a.grid);
    for (std::size_t n = 0; n < a.size(); ++n) {
        out.x[n] = a.y[n] * b.z[n] - a.z[n] * b.y[n];
        out.y[n] = a.z[n] * b.x[n] - a.x[n] * b.z[n];
        out.z[n] = a.x[n] * b.y[n] - a.y[n] * b.x[n];
    }
    return out;
}

inline ScalarField dot_field(const VectorField& a, const VectorField& b) {
    ScalarField out(a.grid);
    for (std::size_t n = 0; n < a.size(); ++n)
        out.v[n] = a.x[n] * b.x[n] + a.y[n] * b.y[n] + a.z[n] * b.z[n];
    return out;
}

// curl(B)/mu0
inline VectorField current_density(const MhdState& s, const Eos& eos) {
    VectorField J = curl(s.B);
    double inv = 1.0 / eos.mu0;
    for (std::size_t n = 0; n < J.size(); ++n) {
        J.x[n] *= inv;
        J.y[n] *= inv;
        J.z[n] *= inv;
    }
    return J;
}

inline Tendency mhd_rhs(const MhdState& s, const Eos& eos) {
    const Grid& g = s.grid;
    Tendency t;

    // continuity: d rho/dt = -div(rho u)
    VectorField mom(g);
    for (std::size_t n = 0; n < mom.size(); ++n) {
        mom.x[n] = s.rho.v[n] * s.u.x[n];
        mom.y[n] = s.rho.v[n] * s.u.y[n];
        mom.z[n] = s.rho.v[n] * s.u.z[n];
    }
    t.rho = divergence(mom);
    for (double& a : t.rho.v) a = -a;

    // momentum: du/dt = -(u.grad)u - grad p / rho + J x B / rho - grad Phi
    ScalarField p = pressure_field(eos, s.rho, s.S);
    VectorField gradp = gradient(p);
    VectorField J = current_density(s, eos);
    VectorField JxB = cross_field(J, s.B);
    VectorField adv = advect(s.u, s.u);
    t.u = VectorField(g);
    for (std::size_t n = 0; n < t.u.size(); ++n) {
        double ir = 1.0 / s.rho.v[n];
        t.u.x[n] = -adv.x[n] + (JxB.x[n] - gradp.x[n]) * ir;
        t.u.y[n] = -adv.y[n] + (JxB.y[n] - gradp.y[n]) * ir;
        t.u.z[n] = -adv.z[n] + (JxB.z[n] - gradp.z[n]) * ir;
    }
    if (s.Phi) {
        VectorField gphi = gradient(*s.Phi);
        for (std::size_t n = 0; n < t.u.size(); ++n) {
            t.u.x[n] -= gphi.x[n];
            t.u.y[n] -= gphi.y[n];
            t.u.z[n] -= gphi.z[n];
        }
    }

    // entropy: dS/dt = -u.grad S
    t.S = advect(s.u, s.S);
    for (double& a : t.S.v) a = -a;

    // induction: dB/dt = curl(u x B)
    t.B = curl(cross_field(s.u, s.B));

    // labels: d psi/dt = -u.(grad psi + bg)
    t.labels.reserve(s.labels.size());
    for (const Label& l : s.labels) {
        ScalarField lt = advect(s.u, l.f);
        for (std::size_t n = 0; n < lt.size(); ++n)
            lt.v[n] = -(lt.v[n] + s.u.x[n] * l.bg.x + s.u.y[n] * l.bg.y + s.u.z[n] * l.bg.z);
        t.labels.push_back(std::move(lt));
    }

    // vector potential, Lie-dragged gauge: dA/dt = u x (curl A) - grad(u.A)
    if (s.A) {
        VectorField curlA = curl(*s.A);
        VectorField uxw = cross_field(s.u, curlA);
        VectorField gua = gradient(dot_field(s.u, *s.A));
        VectorField ta(g);
        for (std::size_t n = 0; n < ta.size(); ++n) {
            ta.x[n] = uxw.x[n] - gua.x[n];
            ta.y[n] = uxw.y[n] - gua.y[n];
            ta.z[n] = uxw.z[n] - gua.z[n];
        }
        t.A = std::move(ta);
    }

    bool ok = all_finite(t.rho) && all_finite(t.S) && all_finite(t.u) && all_finite(t.B);
    for (const ScalarField& lt : t.labels) ok = ok && all_finite(lt);
    if (t.A) ok = ok && all_finite(*t.A);
    require(ok, "mhd_rhs: non-finite tendency at t = " + std::to_string(s.t));
    return t;
}

// dt = cfl * h_min / max(|u| + c_fast), c_fast^2 = c_s^2 + v_A^2.
inline double stable_dt(const MhdState& s, const Eos& eos, double cfl) {
    require(cfl > 0.0, "stable_dt: cfl must be positive");
    double vmax = 0.0;
    for (std::size_t n = 0; n < s.rho.v.size(); ++n) {
        double rho = s.rho.v[n];
        require(rho > 0.0, "stable_dt: nonpositive density");
        double cs2 = eos.cs2(rho, s.S.v[n]);
        double b2 = s.B.x[n] * s.B.x[n] + s.B.y[n] * s.B.y[n] + s.B.z[n] * s.B.z[n];
        double va2 = b2 / (eos.mu0 * rho);
        double uu = std::sqrt(s.u.x[n] * s.u.x[n] + s.u.y[n] * s.u.y[n] + s.u.z[n] * s.u.z[n]);
        vmax = std::max(vmax, uu + std::sqrt(cs2 + va2));
    }
    require(vmax > 0.0, "stable_dt: zero signal speed");
    return cfl * s.grid.h_min() / vmax;
}

struct Diagnostics {
    double t = 0.0;
    double total_mass = 0.0;
    double total_energy = 0.0;
    double cross_helicity = 0.0;
    double divB_linf = 0.0;
};

inline Diagnostics global_diagnostics(const MhdState& s, const Eos& eos) {
    Diagnostics d;
    d.t = s.t;
    d.total_mass = integral(s.rho);
    ScalarField e(s.grid);
    for (std::size_t n = 0; n < e.size(); ++n) {
        double rho = s.rho.v[n];
        double eps = eos.eval(rho, s.S.v[n]).eps;
        double u2 = s.u.x[n] * s.u.x[n] + s.u.y[n] * s.u.y[n] + s.u.z[n] * s.u.z[n];
        double b2 = s.B.x[n] * s.B.x[n] + s.B.y[n] * s.B.y[n] + s.B.z[n] * s.B.z[n];
        e.v[n] = 0.5 * rho * u2 + eps + 0.5 * b2 / eos.mu0;
        if (s.Phi) e.v[n] += rho * s.Phi->v[n];
    }
    d.total_energy = integral(e);
    d.cross_helicity = integral(dot_field(s.u, s.B));
    d.divB_linf = linf(divergence(s.B));
    return d;
}

}  // namespace mhdinv
