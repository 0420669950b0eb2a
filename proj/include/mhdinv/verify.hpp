// Acceptance suite: one table row per measured quantity, grouped by
// criterion. Rows compare a measured value against a threshold with an
// explicit direction, so the printed table reads as evidence, not prose.
// Truncation-scale thresholds relax by (base/64)^order when the suite runs
// at a coarser base grid; order floors and round-off bounds never relax.
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <string>
#include <vector>

#include "runner.hpp"

namespace mhdinv {

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    std::string cmp;  // "<=" or ">="
    bool pass = false;
    std::string note;
};

inline CheckResult check_le(const std::string& name, double value, double threshold,
                            const std::string& note = "") {
    return {name, value, threshold, "<=", value <= threshold, note};
}

inline CheckResult check_ge(const std::string& name, double value, double threshold,
                            const std::string& note = "") {
    return {name, value, threshold, ">=", value >= threshold, note};
}

// Observed order between a coarse and a fine residual norm. Returns NaN when
// the pair is non-monotone or degenerate.
inline double observed_order(double coarse, double fine) {
    if (!(coarse > 0.0) || !(fine > 0.0) || fine >= coarse)
        return std::numeric_limits<double>::quiet_NaN();
    return std::log2(coarse / fine);
}

// Order row with the noise-floor escape: when both norms sit at round-off the
// order is meaningless and the row passes as "below noise floor".
inline CheckResult check_order(const std::string& name, double coarse, double fine,
                               double floor_, double noise) {
    if (coarse <= noise && fine <= noise) {
        CheckResult r{name, std::numeric_limits<double>::quiet_NaN(), floor_, ">=", true,
                      "below noise floor"};
        return r;
    }
    double p = observed_order(coarse, fine);
    CheckResult r{name, p, floor_, ">=", false, ""};
    if (std::isnan(p)) {
        r.note = "warning: non-monotone residuals";
        r.pass = false;
    } else {
        r.pass = p >= floor_;
    }
    return r;
}

namespace detail {

inline const ConservationReport& last_report(const RunRecord& rec, const std::string& name) {
    for (auto it = rec.reports.rbegin(); it != rec.reports.rend(); ++it)
        if (it->name == name) return *it;
    fail("no report named " + name + " in run record for " + rec.scenario.name);
}

inline double report_scale(const ConservationReport& r) {
    double s = 1.0;
    if (!r.density.v.empty()) s = std::max(s, linf(r.density));
    return s;
}

inline double premise_value(const ConservationReport& r, const std::string& key) {
    for (const auto& kv : r.premise_norms)
        if (kv.first == key) return kv.second;
    fail("report " + r.name + " has no premise " + key);
}

inline double linf_diff(const ScalarField& a, const ScalarField& b) {
    require(a.v.size() == b.v.size(), "linf_diff: size mismatch");
    double m = 0.0;
    for (std::size_t n = 0; n < a.v.size(); ++n)
        m = std::max(m, std::abs(a.v[n] - b.v[n]));
    return m;
}

inline double linf_diff(const VectorField& a, const VectorField& b) {
    require(a.size() == b.size(), "linf_diff: size mismatch");
    double m = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        m = std::max(m, std::abs(a.x[n] - b.x[n]));
        m = std::max(m, std::abs(a.y[n] - b.y[n]));
        m = std::max(m, std::abs(a.z[n] - b.z[n]));
    }
    return m;
}

inline double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline void progress(const char* what) { std::fprintf(stderr, "[verify] %s\n", what); }

// Deterministic scattered points in the periodic box (additive lattice).
inline std::vector<Vec3> scattered_points(const Grid& g, int count) {
    std::vector<Vec3> pts;
    pts.reserve(count);
    const double a1 = 0.7548776662466927, a2 = 0.5698402909980532;
    for (int i = 0; i < count; ++i) {
        double fx = std::fmod(0.37 + a1 * (i + 1), 1.0);
        double fy = std::fmod(0.71 + a2 * (i + 1), 1.0);
        pts.push_back(Vec3{fx * g.Lx, fy * g.Ly, g.z(0)});
    }
    return pts;
}

inline ScalarField entropy_pv_field(const MhdState& s) {
    VectorField omega = curl(s.u);
    VectorField gS = gradient(s.S);
    ScalarField q(s.grid);
    for (std::size_t n = 0; n < q.size(); ++n)
        q.v[n] = dot(omega.at(n), gS.at(n)) / s.rho.v[n];
    return q;
}

}  // namespace detail

// Base settings for the suite: grid sizes, stencil orders, EOS and CFL come
// from here; presets, report sets and end times are fixed per criterion.
inline Scenario default_verify_scenario() {
    Scenario sc;
    sc.name = "verify";
    sc.preset = "orszag-tang-25d";
    sc.nx = 64;
    sc.ny = 64;
    sc.nz = 1;
    sc.order = 4;
    sc.label_order = 2;
    sc.t_end = 0.2;
    sc.cfl = 0.4;
    sc.mode = ResidualMode::semi_discrete;
    sc.reports = {};
    return sc;
}

struct VerifySummary {
    std::vector<CheckResult> checks;
    bool all_pass = true;

    void add(CheckResult r) {
        all_pass = all_pass && r.pass;
        checks.push_back(std::move(r));
    }
};

inline VerifySummary acceptance_suite(const Scenario& base,
                                      const std::string& out_dir = "out/verify") {
    VerifySummary sum;
    const Eos& eos = base.eos;
    const double sep_relax = std::pow(static_cast<double>(base.nx) / 64.0, base.order);

    auto derive = [&](const char* name, const char* preset) {
        Scenario sc = base;
        sc.name = name;
        sc.preset = preset;
        return sc;
    };

    // --- criterion 1: uniform static state nulls every report -------------
    {
        detail::progress("criterion 1: uniform static state");
        auto t0 = std::chrono::steady_clock::now();
        Scenario sc = derive("uniform-null", "uniform");
        sc.t_end = 0.1;
        sc.reports = {"eq1.2", "eq1.3", "eq1.5", "eq4.35da", "nfa15",
                      "nfa17", "nfa34", "nfa35", "nfa36"};
        RunRecord rec = run_scenario(sc);
        for (const std::string& tag : sc.reports) {
            const ConservationReport& r = detail::last_report(rec, tag);
            sum.add(check_le("c01.uniform-null/" + tag, r.norms.linf,
                             1e-11 * detail::report_scale(r)));
        }
        sum.add(check_le("c01.uniform-null/runtime_s", detail::elapsed_s(t0), 5.0,
                         "wall clock, this machine"));
    }

    // --- reference sweep shared by criteria 2, 4, 5, 6, 10 ----------------
    detail::progress("reference sweep: orszag-tang-25d at three grids");
    auto t_ref = std::chrono::steady_clock::now();
    Scenario ref = derive("reference", "orszag-tang-25d");
    ref.reports = {"eq1.3", "eq1.5"};
    std::vector<RunRecord> refs;
    for (int lvl = 0; lvl < 3; ++lvl) refs.push_back(run_scenario(ref, 1 << lvl));
    double t_ref_s = detail::elapsed_s(t_ref);

    double divB_rel_all = 0.0;
    for (const RunRecord& r : refs) divB_rel_all = std::max(divB_rel_all, r.divB_rel_max);

    // --- criterion 2: generalized PV law convergence -----------------------
    {
        std::vector<double> res_l2, den_l2;
        for (const RunRecord& r : refs) {
            const ConservationReport& rep = detail::last_report(r, "eq1.3");
            res_l2.push_back(rep.norms.l2);
            den_l2.push_back(l2(rep.density));
        }
        char buf[96];
        for (int i = 0; i < 2; ++i) {
            std::snprintf(buf, sizeof buf, "c02.pv-order/eq1.3[%dx->%dx]", 1 << i,
                          2 << i);
            sum.add(check_order(buf, res_l2[i], res_l2[i + 1], 3.5, 1e-13));
        }
        sum.add(check_ge("c02.pv-separation/eq1.3@finest", den_l2[2] / res_l2[2],
                         100.0 * sep_relax, "density L2 over residual L2"));
        sum.add(check_le("c02.pv-order/runtime_s", t_ref_s, 300.0,
                         "wall clock, this machine"));
    }

    // --- criterion 3: Ertel limit (B = 0, psi = S) --------------------------
    {
        detail::progress("criterion 3: Ertel limit sweep");
        Scenario sc = derive("ertel", "orszag-tang-25d");
        sc.b_scale = 0.0;
        sc.psi_from_entropy = true;
        sc.reports = {"eq1.2"};
        std::vector<double> res_l2;
        std::vector<double> drift;
        for (int lvl = 0; lvl < 3; ++lvl) {
            RunRecord rec = run_scenario(sc, 1 << lvl);
            const ConservationReport& rep = detail::last_report(rec, "eq1.2");
            res_l2.push_back(rep.norms.l2);
            if (lvl == 0) {
                sum.add(check_le("c03.ertel-premise/B_linf",
                                 detail::premise_value(rep, "B_linf"), 0.0, "exact"));
                sum.add(check_le("c03.ertel-premise/gradpsi_cross_gradS",
                                 detail::premise_value(rep, "gradpsi_cross_gradS_linf"),
                                 0.0, "exact"));
            }
            divB_rel_all = std::max(divB_rel_all, rec.divB_rel_max);

            // entropy PV sampled along scattered tracers, endpoint drift
            Grid g = scenario_grid(sc, 1 << lvl);
            MhdState s = make_initial_state(sc, g);
            LagrangianMap cloud = make_tracers(detail::scattered_points(g, 100));
            std::vector<double> q0 =
                map_interpolator(cloud, g).sample(detail::entropy_pv_field(s));
            int N = step_count(s, eos, sc.cfl, sc.t_end);
            double dt = sc.t_end / N;
            for (int i = 0; i < N; ++i) s = rk4_step(s, eos, dt, {&cloud});
            std::vector<double> q1 =
                map_interpolator(cloud, g).sample(detail::entropy_pv_field(s));
            double d = 0.0;
            for (std::size_t i = 0; i < q0.size(); ++i)
                d = std::max(d, std::abs(q1[i] - q0[i]));
            drift.push_back(d);
        }
        char buf[96];
        for (int i = 0; i < 2; ++i) {
            std::snprintf(buf, sizeof buf, "c03.ertel-order/eq1.2[%dx->%dx]", 1 << i,
                          2 << i);
            sum.add(check_order(buf, res_l2[i], res_l2[i + 1], 3.5, 1e-13));
            std::snprintf(buf, sizeof buf, "c03.tracer-drift/ratio[%dx->%dx]", 1 << i,
                          2 << i);
            sum.add(check_ge(buf, drift[i] / std::max(drift[i + 1], 1e-300), 8.0,
                             "entropy PV drift along 100 tracers"));
        }
    }

    // --- criterion 4: Cheviakov system equals the PV law --------------------
    {
        const ConservationReport& pv = detail::last_report(refs[0], "eq1.3");
        const ConservationReport& ch = detail::last_report(refs[0], "eq1.5");
        double dscale = std::max(linf(pv.density), 1e-300);
        double fscale = std::max(linf(pv.flux), 1e-300);
        sum.add(check_le("c04.cheviakov/density_match",
                         detail::linf_diff(pv.density, ch.density) / dscale, 1e-12,
                         "relative to density sup"));
        sum.add(check_le("c04.cheviakov/flux_match",
                         detail::linf_diff(pv.flux, ch.flux) / fscale, 1e-12,
                         "relative to flux sup"));
        sum.add(check_le("c04.cheviakov/div_N",
                         detail::premise_value(ch, "div_N_linf"),
                         1e-11 * std::max(1.0, dscale)));
    }

    // --- criteria 5 and 6: map algebra and on-shell Euler-Lagrange ----------
    {
        detail::progress("criteria 5-6: Lagrangian map algebra");
        std::vector<double> rho_err, B_err, el_l2;
        double ell_fact = 0.0, ell_scale = 1.0;
        for (int lvl = 0; lvl < 3; ++lvl) {
            const RunRecord& rec = refs[lvl];
            Grid g = scenario_grid(ref, 1 << lvl);
            MhdState s0 = make_initial_state(ref, g);
            LagrangianMap m0 = make_map(g, ref.label_order);
            LabelData ld = make_label_data(m0, s0);

            const LagrangianMap& m = rec.final_map;
            const MhdState& sf = rec.final_state;
            Interpolator itp = map_interpolator(m, g);
            SampledState at = sample_state_at(sf, itp);
            MapReconstruction mr = map_reconstruct(m, ld, eos, at);

            double re = 0.0, be = 0.0;
            for (std::size_t n = 0; n < m.size(); ++n) {
                re = std::max(re, std::abs(at.rho[n] - mr.rho.v[n]));
                be = std::max({be, std::abs(at.Bx[n] - mr.B.x[n]),
                               std::abs(at.By[n] - mr.B.y[n]),
                               std::abs(at.Bz[n] - mr.B.z[n])});
            }
            rho_err.push_back(re);
            B_err.push_back(be);
            if (lvl == 2) {
                double ef = 0.0;
                for (std::size_t n = 0; n < m.size(); ++n)
                    ef = std::max(ef,
                                  std::abs(mr.ell0.v[n] - mr.J.v[n] * mr.ell.v[n]));
                ell_fact = ef;
                ell_scale = std::max(1.0, linf(mr.ell0));
            }

            Tendency tend = mhd_rhs(sf, eos);
            el_l2.push_back(l2(euler_lagrange_residual(m, ld, sf, tend, eos)));
        }
        char buf[96];
        for (int i = 0; i < 2; ++i) {
            std::snprintf(buf, sizeof buf, "c05.map/rho_order[%dx->%dx]", 1 << i, 2 << i);
            sum.add(check_order(buf, rho_err[i], rho_err[i + 1], 3.0, 1e-14));
            std::snprintf(buf, sizeof buf, "c05.map/B_order[%dx->%dx]", 1 << i, 2 << i);
            sum.add(check_order(buf, B_err[i], B_err[i + 1], 3.0, 1e-14));
            std::snprintf(buf, sizeof buf, "c06.euler-lagrange/order[%dx->%dx]", 1 << i,
                          2 << i);
            // asymptotic rate 2; the observed floor sits half an order below
            // because the signed subdominant term keeps doubling ratios under 4
            sum.add(check_order(buf, el_l2[i], el_l2[i + 1], 1.5, 1e-13));
        }
        sum.add(check_le("c05.map/ell_factoring", ell_fact / ell_scale, 1e-12,
                         "label-factored Lagrangian density"));
    }

    // --- criterion 7: determining equations + mutation control --------------
    {
        detail::progress("criterion 7: determining equations sweep");
        Scenario sc = derive("determining", "custom-closures");
        sc.reports = {"eq4.34", "eq4.35a", "eq4.35b", "eq4.35c", "eq4.35aa"};

        // norms per (variant key, level) at t = 0 and t = t_end
        std::vector<std::vector<ConservationReport>> at0, at2;
        for (int lvl = 0; lvl < 3; ++lvl) {
            Grid g = scenario_grid(sc, 1 << lvl);
            MhdState s = make_initial_state(sc, g);
            Foliation fol =
                foliation_build(make_grid(g.nx, g.ny, g.nz, g.Lx, g.Ly, g.Lz,
                                          sc.label_order),
                                scenario_foliation_closures(sc));
            SymmetryGenerator gen;
            gen.fol = &fol;
            Tendency tend = mhd_rhs(s, eos);
            at0.push_back(determining_residuals(semi_window(s, tend),
                                                ResidualMode::semi_discrete, gen, eos));

            RunRecord rec = run_scenario(sc, 1 << lvl);
            divB_rel_all = std::max(divB_rel_all, rec.divB_rel_max);
            std::size_t nrep = at0.back().size();
            require(rec.reports.size() >= nrep, "determining sweep: short report batch");
            at2.emplace_back(rec.reports.end() - nrep, rec.reports.end());
        }
        for (std::size_t k = 0; k < at0[0].size(); ++k) {
            auto row = [&](const char* when,
                           const std::vector<std::vector<ConservationReport>>& seq) {
                const ConservationReport& r0 = seq[0][k];
                sum.add(check_order("c07.determining/" + r0.name + "." + r0.variant +
                                        "@" + when + "[1x->2x]",
                                    seq[0][k].norms.l2, seq[1][k].norms.l2, 1.5, 1e-12));
                sum.add(check_order("c07.determining/" + r0.name + "." + r0.variant +
                                        "@" + when + "[2x->4x]",
                                    seq[1][k].norms.l2, seq[2][k].norms.l2, 1.5, 1e-12));
            };
            row("t0", at0);
            row("tend", at2);
        }

        // mutation control: a constant generator perturbation of magnitude 0.1
        // must blow up every Euler-side residual
        {
            Grid g = scenario_grid(sc, 1);
            MhdState s = make_initial_state(sc, g);
            Foliation fol =
                foliation_build(make_grid(g.nx, g.ny, g.nz, g.Lx, g.Ly, g.Lz,
                                          sc.label_order),
                                scenario_foliation_closures(sc));
            SymmetryGenerator gen;
            gen.fol = &fol;
            Tendency tend = mhd_rhs(s, eos);
            StateWindow w = semi_window(s, tend);
            auto clean = determining_residuals(w, ResidualMode::semi_discrete, gen, eos);
            const double e = 0.1 / std::sqrt(3.0);
            gen.perturb = Vec3{e, e, e};
            auto mut = determining_residuals(w, ResidualMode::semi_discrete, gen, eos);
            double min_ratio = std::numeric_limits<double>::infinity();
            double max_abs = 0.0;
            for (std::size_t k = 0; k < clean.size(); ++k) {
                if (clean[k].side != "euler") continue;
                double ratio = mut[k].norms.l2 / std::max(clean[k].norms.l2, 1e-300);
                min_ratio = std::min(min_ratio, ratio);
                max_abs = std::max(max_abs, mut[k].norms.l2);
            }
            sum.add(check_ge("c07.mutation/min_ratio", min_ratio, 10.0,
                             "mutated over clean, Euler-side residuals"));
            sum.add(check_ge("c07.mutation/max_abs", max_abs, 1e-3,
                             "largest mutated residual L2"));
        }
    }

    // --- criterion 8: Bianchi identity, both representations ----------------
    {
        detail::progress("criterion 8: Bianchi identity sweep");
        Scenario sc = derive("bianchi", "orszag-tang-25d");
        std::vector<double> lab_l2, eul_l2, cross_linf;
        double eq_rel = 0.0;
        for (int lvl = 0; lvl < 3; ++lvl) {
            Grid g = scenario_grid(sc, 1 << lvl);
            MhdState s = make_initial_state(sc, g);
            LagrangianMap live = make_map(g, sc.label_order);
            LabelData ld = make_label_data(live, s);
            LabelFrame frame = make_label_frame(live, s);
            int N = step_count(s, eos, sc.cfl, sc.t_end);
            require(N >= 2, "bianchi sweep: needs at least 2 steps");
            double dt = sc.t_end / N;
            std::deque<std::pair<MhdState, LagrangianMap>> ring;
            ring.emplace_back(s, live);
            for (int i = 1; i <= N; ++i) {
                MhdState nx_ = rk4_step(ring.back().first, eos, dt, {&live});
                ring.emplace_back(std::move(nx_), live);
                if (ring.size() > 3) ring.pop_front();
            }
            StateWindow w =
                snapshot_window(ring[0].first, ring[1].first, ring[2].first, dt);
            MapWindow mw;
            mw.prev = &ring[0].second;
            mw.center = &ring[1].second;
            mw.next = &ring[2].second;
            ConservationReport rl = bianchi_label_residual(w, mw, ld, frame.psi, eos);
            ConservationReport re = bianchi_euler_residual(w, ResidualMode::snapshot, eos);
            ConservationReport rp =
                pv_residual(w, "psi", PvVariant::fullF, ResidualMode::snapshot, eos);
            lab_l2.push_back(rl.norms.l2);
            eul_l2.push_back(re.norms.l2);
            if (lvl == 0)
                eq_rel = detail::linf_diff(re.residual, rp.residual) /
                         std::max(re.norms.linf, 1e-300);

            // cross-check: label residual per unit current volume vs the
            // Euler residual sampled at the tracers
            MapGeometry geo = map_geometry(*mw.center);
            Interpolator itp = map_interpolator(*mw.center, g);
            std::vector<double> re_tr = itp.sample(re.residual);
            double cx = 0.0;
            for (std::size_t n = 0; n < geo.J.v.size(); ++n)
                cx = std::max(cx, std::abs(rl.residual.v[n] / geo.J.v[n] - re_tr[n]));
            cross_linf.push_back(cx);
        }
        char buf[96];
        for (int i = 0; i < 2; ++i) {
            std::snprintf(buf, sizeof buf, "c08.bianchi/label_order[%dx->%dx]", 1 << i,
                          2 << i);
            // asymptotic rate 2 with the half-order observed allowance, as for c06
            sum.add(check_order(buf, lab_l2[i], lab_l2[i + 1], 1.5, 1e-13));
            std::snprintf(buf, sizeof buf, "c08.bianchi/euler_order[%dx->%dx]", 1 << i,
                          2 << i);
            sum.add(check_order(buf, eul_l2[i], eul_l2[i + 1], 1.5, 1e-13));
            std::snprintf(buf, sizeof buf, "c08.bianchi/cross_order[%dx->%dx]", 1 << i,
                          2 << i);
            sum.add(check_order(buf, cross_linf[i], cross_linf[i + 1], 1.7, 1e-13));
        }
        sum.add(check_le("c08.bianchi/euler_eq_fullF", eq_rel, 1e-12,
                         "relative to residual sup"));
    }

    // --- criterion 9: foliation geometry ------------------------------------
    {
        detail::progress("criterion 9: foliation geometry");
        auto lgrid_n = [&](int n) {
            return make_grid(n, n, 1, base.Lx, base.Ly, base.Lz, base.label_order);
        };
        BasisChecks cart = basis_checks(foliation_build(lgrid_n(base.nx),
                                                        cartesian_foliation()));
        sum.add(check_le("c09.cartesian/duality", cart.duality_err, 1e-11));
        sum.add(check_le("c09.cartesian/cross_relations", cart.metric_consistency, 1e-11));
        sum.add(check_le("c09.cartesian/bracket", cart.bracket_err, 1e-11));

        std::vector<BasisChecks> cur;
        for (int lvl = 0; lvl < 3; ++lvl)
            cur.push_back(
                basis_checks(foliation_build(lgrid_n(base.nx << lvl), curved_foliation())));
        char buf[96];
        for (int i = 0; i < 2; ++i) {
            std::snprintf(buf, sizeof buf, "c09.curved/duality_order[%dx->%dx]", 1 << i,
                          2 << i);
            sum.add(check_order(buf, cur[i].duality_err, cur[i + 1].duality_err, 1.7,
                                1e-12));
            std::snprintf(buf, sizeof buf, "c09.curved/cross_order[%dx->%dx]", 1 << i,
                          2 << i);
            sum.add(check_order(buf, cur[i].metric_consistency,
                                cur[i + 1].metric_consistency, 1.7, 1e-12));
            std::snprintf(buf, sizeof buf, "c09.curved/bracket_order[%dx->%dx]", 1 << i,
                          2 << i);
            sum.add(check_order(buf, cur[i].bracket_err, cur[i + 1].bracket_err, 1.7,
                                1e-12));
        }

        // the curved and sheared presets satisfy the discrete bracket identity
        // exactly (their closures are separable), so the genuine second-order
        // bracket measurement runs on the twisted preset
        std::vector<BasisChecks> twi;
        for (int lvl = 0; lvl < 3; ++lvl)
            twi.push_back(
                basis_checks(foliation_build(lgrid_n(base.nx << lvl), twisted_foliation())));
        for (int i = 0; i < 2; ++i) {
            std::snprintf(buf, sizeof buf, "c09.twisted/bracket_order[%dx->%dx]", 1 << i,
                          2 << i);
            sum.add(check_order(buf, twi[i].bracket_err, twi[i + 1].bracket_err, 1.7,
                                1e-12));
            std::snprintf(buf, sizeof buf, "c09.twisted/duality_order[%dx->%dx]", 1 << i,
                          2 << i);
            sum.add(check_order(buf, twi[i].duality_err, twi[i + 1].duality_err, 1.7,
                                1e-12));
        }
    }

    // --- criterion 11: determinism ------------------------------------------
    // runs before the criterion-10 rows so its divB maximum is included there
    {
        detail::progress("criterion 11: determinism double run");
        Scenario sc = derive("determinism", "orszag-tang-25d");
        sc.reports = {"eq1.3", "eq1.5", "eq4.35da", "nfa15", "nfa17"};
        RunRecord a = run_scenario(sc);
        RunRecord b = run_scenario(sc);
        std::string ja = record_json(a).dump(2) + "\n";
        std::string jb = record_json(b).dump(2) + "\n";
        std::string ca = diagnostics_csv_string(a.series);
        std::string cb = diagnostics_csv_string(b.series);
        sum.add(check_le("c11.determinism/run_json", ja == jb ? 0.0 : 1.0, 0.0,
                         "byte mismatch count"));
        sum.add(check_le("c11.determinism/diagnostics_csv", ca == cb ? 0.0 : 1.0, 0.0,
                         "byte mismatch count"));
        divB_rel_all = std::max(divB_rel_all, a.divB_rel_max);
        std::filesystem::create_directories(out_dir);
        write_file_bytes(out_dir + "/run.json", ja);
        write_file_bytes(out_dir + "/diagnostics.csv", ca);
    }

    // --- criterion 10: conserved structure of the solver ---------------------
    {
        sum.add(check_le("c10.solver/divB_rel_max", divB_rel_all, 1e-11,
                         "max over every run in this suite"));
        sum.add(check_le("c10.solver/energy_drift@2x", refs[1].energy_drift, 1e-6,
                         "reference run, middle grid"));
        sum.add(check_le("c10.solver/mass_drift@2x", refs[1].mass_drift, 1e-6,
                         "reference run, middle grid"));
    }

    return sum;
}

inline void print_checks(const VerifySummary& sum, std::FILE* out) {
    std::size_t w = 0;
    for (const CheckResult& c : sum.checks) w = std::max(w, c.name.size());
    for (const CheckResult& c : sum.checks) {
        std::fprintf(out, "%-*s  %13.6g %s %-13.6g  %s%s%s\n", static_cast<int>(w),
                     c.name.c_str(), c.value, c.cmp.c_str(), c.threshold,
                     c.pass ? "PASS" : "FAIL", c.note.empty() ? "" : "  # ",
                     c.note.c_str());
    }
    std::fprintf(out, "%zu checks, %zu failed\n", sum.checks.size(),
                 static_cast<std::size_t>(std::count_if(
                     sum.checks.begin(), sum.checks.end(),
                     [](const CheckResult& c) { return !c.pass; })));
}

}  // namespace mhdinv
