// Conservation-law residuals for the generalized potential-vorticity family:
// the PV law and its hydrodynamic limit, the Cheviakov system, the vorticity
// identities, and the advected-invariant library. Residuals come in two
// modes: semi-discrete (time derivative assembled from RHS tendencies by the
// product rule, isolating spatial truncation) and snapshot (centered time
// difference over stored states).
#pragma once

#include <functional>
#include <optional>

#include "report.hpp"
#include "rhs.hpp"
#include "stepper.hpp"

namespace mhdinv {

enum class ResidualMode { semi_discrete, snapshot };

inline const char* mode_name(ResidualMode m) {
    return m == ResidualMode::semi_discrete ? "semi-discrete" : "snapshot";
}

// Three consecutive states around one report time. Semi-discrete mode uses
// center + tend; snapshot mode uses prev/next with uniform spacing dt.
struct StateWindow {
    const MhdState* prev = nullptr;
    const MhdState* center = nullptr;
    const MhdState* next = nullptr;
    double dt = 0.0;
    const Tendency* tend = nullptr;
};

inline StateWindow semi_window(const MhdState& s, const Tendency& t) {
    StateWindow w;
    w.center = &s;
    w.tend = &t;
    return w;
}

inline StateWindow snapshot_window(const MhdState& prev, const MhdState& center,
                                   const MhdState& next, double dt, const Tendency* tend = nullptr) {
    StateWindow w;
    w.prev = &prev;
    w.center = &center;
    w.next = &next;
    w.dt = dt;
    w.tend = tend;
    return w;
}

inline void validate_window(const StateWindow& w, ResidualMode mode) {
    require(w.center != nullptr, "residual window: missing center state");
    if (mode == ResidualMode::semi_discrete)
        require(w.tend != nullptr, "residual window: semi-discrete mode needs tendencies");
    else
        require(w.prev && w.next && w.dt > 0.0,
                "residual window: snapshot mode needs prev/next states and dt > 0");
}

// F = T grad S + grad(u^2/2 - h) + J x B / rho, with the three parts kept.
struct ForceField {
    VectorField total, TgradS, grad_bernoulli, lorentz;
};

inline ForceField force_field(const MhdState& s, const Eos& eos) {
    const Grid& g = s.grid;
    ForceField f;
    VectorField gS = gradient(s.S);
    ScalarField bern(g);
    f.TgradS = VectorField(g);
    for (std::size_t n = 0; n < g.size(); ++n) {
        Thermo th = eos.eval(s.rho.v[n], s.S.v[n]);
        double u2 = s.u.x[n] * s.u.x[n] + s.u.y[n] * s.u.y[n] + s.u.z[n] * s.u.z[n];
        bern.v[n] = 0.5 * u2 - th.h;
        f.TgradS.x[n] = th.T * gS.x[n];
        f.TgradS.y[n] = th.T * gS.y[n];
        f.TgradS.z[n] = th.T * gS.z[n];
    }
    f.grad_bernoulli = gradient(bern);
    VectorField JxB = cross_field(current_density(s, eos), s.B);
    f.lorentz = VectorField(g);
    f.total = VectorField(g);
    for (std::size_t n = 0; n < g.size(); ++n) {
        double ir = 1.0 / s.rho.v[n];
        f.lorentz.x[n] = JxB.x[n] * ir;
        f.lorentz.y[n] = JxB.y[n] * ir;
        f.lorentz.z[n] = JxB.z[n] * ir;
        f.total.x[n] = f.TgradS.x[n] + f.grad_bernoulli.x[n] + f.lorentz.x[n];
        f.total.y[n] = f.TgradS.y[n] + f.grad_bernoulli.y[n] + f.lorentz.y[n];
        f.total.z[n] = f.TgradS.z[n] + f.grad_bernoulli.z[n] + f.lorentz.z[n];
    }
    return f;
}

// omega . grad psi with omega = curl u
inline ScalarField pv_density(const MhdState& s, const std::string& psi) {
    VectorField w = curl(s.u);
    VectorField gp = label_gradient(s.grid, s.label(psi));
    return dot_field(w, gp);
}

enum class PvVariant { mhd, hydro, fullF };

inline const char* pv_report_name(PvVariant v) {
    switch (v) {
        case PvVariant::mhd: return "eq1.3";
        case PvVariant::hydro: return "eq1.2";
        default: return "nfa19";
    }
}

inline const char* pv_variant_name(PvVariant v) {
    switch (v) {
        case PvVariant::mhd: return "mhd";
        case PvVariant::hydro: return "hydro";
        default: return "fullF";
    }
}

namespace detail {

// d/dt of the label's full gradient, from its advection tendency
inline VectorField label_gradient_rate(const MhdState& s, const Tendency& t,
                                       const std::string& psi) {
    for (std::size_t l = 0; l < s.labels.size(); ++l)
        if (s.labels[l].name == psi) return gradient(t.labels[l]);
    fail("label_gradient_rate: unknown label " + psi);
}

inline const ScalarField& label_tendency(const MhdState& s, const Tendency& t,
                                         const std::string& psi) {
    for (std::size_t l = 0; l < s.labels.size(); ++l)
        if (s.labels[l].name == psi) return t.labels[l];
    fail("label_tendency: unknown label " + psi);
}

}  // namespace detail

// Residual of d/dt(omega.grad psi) + div(flux), flux by variant:
//   mhd:   (omega.grad psi) u - (T grad S + J x B / rho) x grad psi
//   hydro: (omega.grad psi) u              (premises: B = 0, grad psi || grad S)
//   fullF: (omega.grad psi) u - F x grad psi
// debug_curl_term re-adds the curl term -curl((u.grad psi) u) dropped from the
// canonical flux; its divergence vanishes to round-off by stencil commutation.
inline ConservationReport pv_residual(const StateWindow& w, const std::string& psi,
                                      PvVariant variant, ResidualMode mode, const Eos& eos,
                                      bool debug_curl_term = false) {
    validate_window(w, mode);
    const MhdState& s = *w.center;
    const Grid& g = s.grid;

    ConservationReport rep;
    rep.name = pv_report_name(variant);
    rep.variant = pv_variant_name(variant);
    rep.mode = mode_name(mode);
    rep.t = s.t;
    rep.grid = g;

    VectorField omega = curl(s.u);
    VectorField gp = label_gradient(g, s.label(psi));
    rep.density = dot_field(omega, gp);

    ScalarField ddt(g);
    if (mode == ResidualMode::semi_discrete) {
        VectorField domega = curl(w.tend->u);
        VectorField dgp = detail::label_gradient_rate(s, *w.tend, psi);
        for (std::size_t n = 0; n < g.size(); ++n)
            ddt.v[n] = domega.x[n] * gp.x[n] + domega.y[n] * gp.y[n] + domega.z[n] * gp.z[n] +
                       omega.x[n] * dgp.x[n] + omega.y[n] * dgp.y[n] + omega.z[n] * dgp.z[n];
    } else {
        ScalarField dp = pv_density(*w.prev, psi);
        ScalarField dn = pv_density(*w.next, psi);
        for (std::size_t n = 0; n < g.size(); ++n)
            ddt.v[n] = (dn.v[n] - dp.v[n]) / (2.0 * w.dt);
    }

    // advective part (omega.grad psi) u
    rep.flux = VectorField(g);
    for (std::size_t n = 0; n < g.size(); ++n) {
        rep.flux.x[n] = rep.density.v[n] * s.u.x[n];
        rep.flux.y[n] = rep.density.v[n] * s.u.y[n];
        rep.flux.z[n] = rep.density.v[n] * s.u.z[n];
    }
    if (variant == PvVariant::mhd) {
        VectorField gS = gradient(s.S);
        VectorField JxB = cross_field(current_density(s, eos), s.B);
        VectorField drive(g);
        for (std::size_t n = 0; n < g.size(); ++n) {
            double T = eos.eval(s.rho.v[n], s.S.v[n]).T;
            double ir = 1.0 / s.rho.v[n];
            drive.x[n] = T * gS.x[n] + JxB.x[n] * ir;
            drive.y[n] = T * gS.y[n] + JxB.y[n] * ir;
            drive.z[n] = T * gS.z[n] + JxB.z[n] * ir;
        }
        VectorField c = cross_field(drive, gp);
        for (std::size_t n = 0; n < g.size(); ++n) {
            rep.flux.x[n] -= c.x[n];
            rep.flux.y[n] -= c.y[n];
            rep.flux.z[n] -= c.z[n];
        }
    } else if (variant == PvVariant::fullF) {
        VectorField c = cross_field(force_field(s, eos).total, gp);
        for (std::size_t n = 0; n < g.size(); ++n) {
            rep.flux.x[n] -= c.x[n];
            rep.flux.y[n] -= c.y[n];
            rep.flux.z[n] -= c.z[n];
        }
    } else {
        rep.premise_norms.emplace_back("B_linf", linf(s.B));
        VectorField gS = gradient(s.S);
        rep.premise_norms.emplace_back("gradpsi_cross_gradS_linf", linf(cross_field(gp, gS)));
    }
    if (debug_curl_term) {
        // -curl((u.grad psi) u): divergence-free addition to the flux
        ScalarField ugp = dot_field(s.u, gp);
        VectorField cu(g);
        for (std::size_t n = 0; n < g.size(); ++n) {
            cu.x[n] = ugp.v[n] * s.u.x[n];
            cu.y[n] = ugp.v[n] * s.u.y[n];
            cu.z[n] = ugp.v[n] * s.u.z[n];
        }
        VectorField cc = curl(cu);
        for (std::size_t n = 0; n < g.size(); ++n) {
            rep.flux.x[n] -= cc.x[n];
            rep.flux.y[n] -= cc.y[n];
            rep.flux.z[n] -= cc.z[n];
        }
    }

    ScalarField divf = divergence(rep.flux);
    rep.residual = ScalarField(g);
    for (std::size_t n = 0; n < g.size(); ++n) rep.residual.v[n] = ddt.v[n] + divf.v[n];
    rep.finalize();
    return rep;
}

// Generalized vorticity system: density N.grad F, flux M x grad F - F_t N,
// premises div N and dN/dt + curl M. Providers are evaluated per state; the
// *_rate providers (given the RHS tendencies) enable semi-discrete mode, else
// snapshot differencing is required.
struct CheviakovSystem {
    using FieldFn = std::function<ScalarField(const MhdState&, const Eos&)>;
    using VecFn = std::function<VectorField(const MhdState&, const Eos&)>;
    using FieldRateFn = std::function<ScalarField(const MhdState&, const Tendency&, const Eos&)>;
    using VecRateFn = std::function<VectorField(const MhdState&, const Tendency&, const Eos&)>;

    VecFn N, M;
    FieldFn Fscalar;     // periodic part only; used for snapshot differencing
    VecFn gradF;         // full spatial gradient of F
    FieldRateFn Ft;      // dF/dt; analytic for advected labels
    VecRateFn gradFt;    // d(grad F)/dt
    VecRateFn Nt;        // dN/dt
};

// Canonical instantiation: N = omega, M = -u x omega - (T grad S + J x B/rho),
// F = advected label (F_t = -u.grad F). Its density and flux reproduce the
// mhd-variant PV law pointwise.
inline CheviakovSystem canonical_cheviakov(const std::string& psi) {
    CheviakovSystem sys;
    sys.N = [](const MhdState& s, const Eos&) { return curl(s.u); };
    sys.M = [](const MhdState& s, const Eos& eos) {
        VectorField omega = curl(s.u);
        VectorField uxw = cross_field(s.u, omega);
        VectorField gS = gradient(s.S);
        VectorField JxB = cross_field(current_density(s, eos), s.B);
        VectorField m(s.grid);
        for (std::size_t n = 0; n < s.grid.size(); ++n) {
            double T = eos.eval(s.rho.v[n], s.S.v[n]).T;
            double ir = 1.0 / s.rho.v[n];
            m.x[n] = -uxw.x[n] - (T * gS.x[n] + JxB.x[n] * ir);
            m.y[n] = -uxw.y[n] - (T * gS.y[n] + JxB.y[n] * ir);
            m.z[n] = -uxw.z[n] - (T * gS.z[n] + JxB.z[n] * ir);
        }
        return m;
    };
    sys.Fscalar = [psi](const MhdState& s, const Eos&) { return s.label(psi).f; };
    sys.gradF = [psi](const MhdState& s, const Eos&) {
        return label_gradient(s.grid, s.label(psi));
    };
    sys.Ft = [psi](const MhdState& s, const Tendency&, const Eos&) {
        const Label& l = s.label(psi);
        ScalarField r = advect(s.u, l.f);
        for (std::size_t n = 0; n < r.size(); ++n)
            r.v[n] = -(r.v[n] + s.u.x[n] * l.bg.x + s.u.y[n] * l.bg.y + s.u.z[n] * l.bg.z);
        return r;
    };
    sys.gradFt = [psi](const MhdState& s, const Tendency& t, const Eos&) {
        return detail::label_gradient_rate(s, t, psi);
    };
    sys.Nt = [](const MhdState&, const Tendency& t, const Eos&) { return curl(t.u); };
    return sys;
}

inline ConservationReport cheviakov_residual(const StateWindow& w, const CheviakovSystem& sys,
                                             ResidualMode mode, const Eos& eos) {
    validate_window(w, mode);
    const MhdState& s = *w.center;
    const Grid& g = s.grid;
    require(static_cast<bool>(sys.N) && static_cast<bool>(sys.M) && static_cast<bool>(sys.gradF),
            "cheviakov_residual: system needs N, M, gradF providers");

    ConservationReport rep;
    rep.name = "eq1.5";
    rep.variant = "cheviakov";
    rep.mode = mode_name(mode);
    rep.t = s.t;
    rep.grid = g;

    VectorField N = sys.N(s, eos);
    VectorField gF = sys.gradF(s, eos);
    rep.density = dot_field(N, gF);

    ScalarField ddt(g);
    if (mode == ResidualMode::semi_discrete) {
        require(static_cast<bool>(sys.Nt) && static_cast<bool>(sys.gradFt),
                "cheviakov_residual: semi-discrete mode needs Nt and gradFt providers");
        VectorField dN = sys.Nt(s, *w.tend, eos);
        VectorField dgF = sys.gradFt(s, *w.tend, eos);
        for (std::size_t n = 0; n < g.size(); ++n)
            ddt.v[n] = dN.x[n] * gF.x[n] + dN.y[n] * gF.y[n] + dN.z[n] * gF.z[n] +
                       N.x[n] * dgF.x[n] + N.y[n] * dgF.y[n] + N.z[n] * dgF.z[n];
    } else {
        VectorField Np = sys.N(*w.prev, eos), Nn = sys.N(*w.next, eos);
        VectorField gFp = sys.gradF(*w.prev, eos), gFn = sys.gradF(*w.next, eos);
        ScalarField dp = dot_field(Np, gFp), dn = dot_field(Nn, gFn);
        for (std::size_t n = 0; n < g.size(); ++n)
            ddt.v[n] = (dn.v[n] - dp.v[n]) / (2.0 * w.dt);
    }

    // F_t at the center; analytic provider preferred, else snapshot difference
    ScalarField Ft(g);
    if (sys.Ft) {
        Tendency none;
        Ft = sys.Ft(s, w.tend ? *w.tend : none, eos);
    } else {
        require(mode == ResidualMode::snapshot && static_cast<bool>(sys.Fscalar),
                "cheviakov_residual: F_t needs an analytic provider or snapshot mode");
        ScalarField fp = sys.Fscalar(*w.prev, eos), fn = sys.Fscalar(*w.next, eos);
        for (std::size_t n = 0; n < g.size(); ++n) Ft.v[n] = (fn.v[n] - fp.v[n]) / (2.0 * w.dt);
    }

    VectorField M = sys.M(s, eos);
    rep.flux = cross_field(M, gF);
    for (std::size_t n = 0; n < g.size(); ++n) {
        rep.flux.x[n] -= Ft.v[n] * N.x[n];
        rep.flux.y[n] -= Ft.v[n] * N.y[n];
        rep.flux.z[n] -= Ft.v[n] * N.z[n];
    }

    ScalarField divf = divergence(rep.flux);
    rep.residual = ScalarField(g);
    for (std::size_t n = 0; n < g.size(); ++n) rep.residual.v[n] = ddt.v[n] + divf.v[n];

    // premises: div N, and dN/dt + curl M
    rep.premise_norms.emplace_back("div_N_linf", linf(divergence(N)));
    {
        VectorField dN(g);
        bool have = false;
        if (mode == ResidualMode::semi_discrete && sys.Nt) {
            dN = sys.Nt(s, *w.tend, eos);
            have = true;
        } else if (mode == ResidualMode::snapshot) {
            VectorField Np = sys.N(*w.prev, eos), Nn = sys.N(*w.next, eos);
            for (std::size_t n = 0; n < g.size(); ++n) {
                dN.x[n] = (Nn.x[n] - Np.x[n]) / (2.0 * w.dt);
                dN.y[n] = (Nn.y[n] - Np.y[n]) / (2.0 * w.dt);
                dN.z[n] = (Nn.z[n] - Np.z[n]) / (2.0 * w.dt);
            }
            have = true;
        }
        if (have) {
            VectorField cM = curl(M);
            for (std::size_t n = 0; n < g.size(); ++n) {
                cM.x[n] += dN.x[n];
                cM.y[n] += dN.y[n];
                cM.z[n] += dN.z[n];
            }
            rep.premise_norms.emplace_back("dtN_plus_curlM_linf", linf(cM));
        }
    }
    rep.finalize();
    return rep;
}

namespace detail {

// Vector-valued identity wrapped as a report: the residual field is the
// pointwise magnitude, so norms recompute from the stored field.
inline ConservationReport vector_report(const char* name, const StateWindow& w, ResidualMode mode,
                                        const VectorField& res) {
    ConservationReport rep;
    rep.name = name;
    rep.mode = mode_name(mode);
    rep.t = w.center->t;
    rep.grid = w.center->grid;
    rep.residual = magnitude(res);
    rep.finalize();
    return rep;
}

}  // namespace detail

// Residuals of the momentum identity u_t - u x omega + grad|u|^2 - F, the
// vorticity equation omega_t - curl(u x omega) - curl F, and the advected
// gradient identity d/dt(grad psi) + grad(u.grad psi). The last is exactly
// zero in semi-discrete mode: the assembled advection term is the exact
// negation of the label tendency, and the gradient stencil is odd.
struct VorticityResiduals {
    ConservationReport momentum_form;   // nfa34
    ConservationReport vorticity_eq;    // nfa35
    ConservationReport grad_advect;     // nfa36
};

inline VorticityResiduals vorticity_residuals(const StateWindow& w, const std::string& psi,
                                              ResidualMode mode, const Eos& eos) {
    validate_window(w, mode);
    const MhdState& s = *w.center;
    const Grid& g = s.grid;
    VorticityResiduals out;

    VectorField ut(g);
    if (mode == ResidualMode::semi_discrete) {
        ut = w.tend->u;
    } else {
        for (std::size_t n = 0; n < g.size(); ++n) {
            ut.x[n] = (w.next->u.x[n] - w.prev->u.x[n]) / (2.0 * w.dt);
            ut.y[n] = (w.next->u.y[n] - w.prev->u.y[n]) / (2.0 * w.dt);
            ut.z[n] = (w.next->u.z[n] - w.prev->u.z[n]) / (2.0 * w.dt);
        }
    }

    VectorField omega = curl(s.u);
    ForceField F = force_field(s, eos);

    {
        VectorField uxw = cross_field(s.u, omega);
        ScalarField u2(g);
        for (std::size_t n = 0; n < g.size(); ++n)
            u2.v[n] = s.u.x[n] * s.u.x[n] + s.u.y[n] * s.u.y[n] + s.u.z[n] * s.u.z[n];
        VectorField gu2 = gradient(u2);
        VectorField res(g);
        for (std::size_t n = 0; n < g.size(); ++n) {
            res.x[n] = ut.x[n] - uxw.x[n] + gu2.x[n] - F.total.x[n];
            res.y[n] = ut.y[n] - uxw.y[n] + gu2.y[n] - F.total.y[n];
            res.z[n] = ut.z[n] - uxw.z[n] + gu2.z[n] - F.total.z[n];
        }
        out.momentum_form = detail::vector_report("nfa34", w, mode, res);
    }
    {
        VectorField wt(g);
        if (mode == ResidualMode::semi_discrete) {
            wt = curl(w.tend->u);
        } else {
            VectorField wp = curl(w.prev->u), wn = curl(w.next->u);
            for (std::size_t n = 0; n < g.size(); ++n) {
                wt.x[n] = (wn.x[n] - wp.x[n]) / (2.0 * w.dt);
                wt.y[n] = (wn.y[n] - wp.y[n]) / (2.0 * w.dt);
                wt.z[n] = (wn.z[n] - wp.z[n]) / (2.0 * w.dt);
            }
        }
        VectorField cuw = curl(cross_field(s.u, omega));
        VectorField cF = curl(F.total);
        VectorField res(g);
        for (std::size_t n = 0; n < g.size(); ++n) {
            res.x[n] = wt.x[n] - cuw.x[n] - cF.x[n];
            res.y[n] = wt.y[n] - cuw.y[n] - cF.y[n];
            res.z[n] = wt.z[n] - cuw.z[n] - cF.z[n];
        }
        out.vorticity_eq = detail::vector_report("nfa35", w, mode, res);
    }
    {
        const Label& l = s.label(psi);
        // u.grad psi assembled exactly as the solver's label advection
        ScalarField adv = advect(s.u, l.f);
        for (std::size_t n = 0; n < g.size(); ++n)
            adv.v[n] = adv.v[n] + s.u.x[n] * l.bg.x + s.u.y[n] * l.bg.y + s.u.z[n] * l.bg.z;
        VectorField gadv = gradient(adv);
        VectorField dgp(g);
        if (mode == ResidualMode::semi_discrete) {
            dgp = detail::label_gradient_rate(s, *w.tend, psi);
        } else {
            VectorField gp = label_gradient(g, w.prev->label(psi));
            VectorField gn = label_gradient(g, w.next->label(psi));
            for (std::size_t n = 0; n < g.size(); ++n) {
                dgp.x[n] = (gn.x[n] - gp.x[n]) / (2.0 * w.dt);
                dgp.y[n] = (gn.y[n] - gp.y[n]) / (2.0 * w.dt);
                dgp.z[n] = (gn.z[n] - gp.z[n]) / (2.0 * w.dt);
            }
        }
        VectorField res(g);
        for (std::size_t n = 0; n < g.size(); ++n) {
            res.x[n] = dgp.x[n] + gadv.x[n];
            res.y[n] = dgp.y[n] + gadv.y[n];
            res.z[n] = dgp.z[n] + gadv.z[n];
        }
        out.grad_advect = detail::vector_report("nfa36", w, mode, res);
    }
    return out;
}

// psi1 = B.grad S / rho; psi2 = A.B / rho; psi3 = B.grad(psi2) / rho.
// psi2 and psi3 need the optional vector potential.
struct AdvectedInvariants {
    ScalarField psi1;
    std::optional<ScalarField> psi2, psi3;
};

// Material-derivative residuals d/dt + u.grad of the advected invariants,
// one report per invariant present.
inline std::vector<ConservationReport> advected_invariant_residuals(const StateWindow& w,
                                                                    ResidualMode mode,
                                                                    const Eos& eos);

inline AdvectedInvariants advected_invariants(const MhdState& s, const Eos&) {
    AdvectedInvariants out;
    const Grid& g = s.grid;
    VectorField gS = gradient(s.S);
    out.psi1 = ScalarField(g);
    for (std::size_t n = 0; n < g.size(); ++n)
        out.psi1.v[n] = (s.B.x[n] * gS.x[n] + s.B.y[n] * gS.y[n] + s.B.z[n] * gS.z[n]) /
                        s.rho.v[n];
    if (s.A) {
        ScalarField p2(g);
        for (std::size_t n = 0; n < g.size(); ++n)
            p2.v[n] = (s.A->x[n] * s.B.x[n] + s.A->y[n] * s.B.y[n] + s.A->z[n] * s.B.z[n]) /
                      s.rho.v[n];
        VectorField gp2 = gradient(p2);
        ScalarField p3(g);
        for (std::size_t n = 0; n < g.size(); ++n)
            p3.v[n] = (s.B.x[n] * gp2.x[n] + s.B.y[n] * gp2.y[n] + s.B.z[n] * gp2.z[n]) /
                      s.rho.v[n];
        out.psi2 = std::move(p2);
        out.psi3 = std::move(p3);
    }
    return out;
}

inline std::vector<ConservationReport> advected_invariant_residuals(const StateWindow& w,
                                                                    ResidualMode mode,
                                                                    const Eos& eos) {
    validate_window(w, mode);
    const MhdState& s = *w.center;
    const Grid& g = s.grid;
    AdvectedInvariants inv = advected_invariants(s, eos);

    auto wrap = [&](const char* variant, const ScalarField& field, const ScalarField& rate) {
        ScalarField res = advect(s.u, field);
        for (std::size_t n = 0; n < g.size(); ++n) res.v[n] += rate.v[n];
        ConservationReport rep;
        rep.name = "nfa31";
        rep.variant = variant;
        rep.mode = mode_name(mode);
        rep.t = s.t;
        rep.grid = g;
        rep.density = field;
        rep.residual = std::move(res);
        rep.finalize();
        return rep;
    };

    std::vector<ConservationReport> out;
    if (mode == ResidualMode::snapshot) {
        AdvectedInvariants ip = advected_invariants(*w.prev, eos);
        AdvectedInvariants in_ = advected_invariants(*w.next, eos);
        auto diff = [&](const ScalarField& a, const ScalarField& b) {
            ScalarField r(g);
            for (std::size_t n = 0; n < g.size(); ++n)
                r.v[n] = (b.v[n] - a.v[n]) / (2.0 * w.dt);
            return r;
        };
        out.push_back(wrap("psi1", inv.psi1, diff(ip.psi1, in_.psi1)));
        if (inv.psi2 && ip.psi2 && in_.psi2) {
            out.push_back(wrap("psi2", *inv.psi2, diff(*ip.psi2, *in_.psi2)));
            out.push_back(wrap("psi3", *inv.psi3, diff(*ip.psi3, *in_.psi3)));
        }
        return out;
    }

    // semi-discrete rates by the product rule from the RHS tendencies
    const Tendency& t = *w.tend;
    VectorField gS = gradient(s.S);
    VectorField dgS = gradient(t.S);
    ScalarField rate1(g);
    for (std::size_t n = 0; n < g.size(); ++n) {
        double ir = 1.0 / s.rho.v[n];
        rate1.v[n] = (dot(t.B.at(n), gS.at(n)) + dot(s.B.at(n), dgS.at(n))) * ir -
                     inv.psi1.v[n] * t.rho.v[n] * ir;
    }
    out.push_back(wrap("psi1", inv.psi1, rate1));

    if (inv.psi2) {
        require(s.A && t.A, "advected_invariant_residuals: psi2 rate needs A tendencies");
        ScalarField rate2(g);
        for (std::size_t n = 0; n < g.size(); ++n) {
            double ir = 1.0 / s.rho.v[n];
            rate2.v[n] = (dot(t.A->at(n), s.B.at(n)) + dot(s.A->at(n), t.B.at(n))) * ir -
                         inv.psi2->v[n] * t.rho.v[n] * ir;
        }
        out.push_back(wrap("psi2", *inv.psi2, rate2));

        VectorField gp2 = gradient(*inv.psi2);
        VectorField dgp2 = gradient(rate2);
        ScalarField rate3(g);
        for (std::size_t n = 0; n < g.size(); ++n) {
            double ir = 1.0 / s.rho.v[n];
            rate3.v[n] = (dot(t.B.at(n), gp2.at(n)) + dot(s.B.at(n), dgp2.at(n))) * ir -
                         inv.psi3->v[n] * t.rho.v[n] * ir;
        }
        out.push_back(wrap("psi3", *inv.psi3, rate3));
    }
    return out;
}

}  // namespace mhdinv
