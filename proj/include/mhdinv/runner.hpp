// Scenario driver: advances a state plus its Lagrangian map with RK4 at a
// fixed dt, emits report batches on the configured cadence, and collects the
// per-step conservation diagnostics. Identical configs produce byte-identical
// records; nothing time- or host-dependent is stored.
#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "conservation.hpp"
#include "foliation.hpp"
#include "io.hpp"
#include "noether.hpp"
#include "scenario.hpp"
#include "stepper.hpp"
#include "symmetry.hpp"
#include "version.hpp"

namespace mhdinv {

struct RunRecord {
    Scenario scenario;
    int refine = 1;
    Grid grid;
    int steps = 0;
    double dt = 0.0;
    std::vector<Diagnostics> series;          // one row per step, including t = 0
    std::vector<ConservationReport> reports;  // batch emission order
    bool has_advection_error = false;
    double advection_error = 0.0;  // closed-form check, advection preset only
    double mass_drift = 0.0;
    double energy_drift = 0.0;
    double divB_rel_max = 0.0;
    MhdState final_state;
    LagrangianMap final_map;
};

namespace detail {

// Report tokens grouped by the evaluation that produces them.
inline bool is_determining_token(const std::string& t) {
    return t == "eq4.34" || t == "eq4.35a" || t == "eq4.35b" || t == "eq4.35c" ||
           t == "eq4.35aa";
}

inline bool is_vorticity_token(const std::string& t) {
    return t == "nfa34" || t == "nfa35" || t == "nfa36";
}

inline bool known_token(const std::string& t) {
    return t == "eq1.2" || t == "eq1.3" || t == "nfa19" || t == "eq1.5" || t == "eq4.35da" ||
           t == "nfa15" || t == "nfa17" || t == "nfa31" || is_determining_token(t) ||
           is_vorticity_token(t);
}

}  // namespace detail

inline RunRecord run_scenario(const Scenario& sc, int refine = 1) {
    RunRecord rec;
    rec.scenario = sc;
    rec.refine = refine;
    rec.grid = scenario_grid(sc, refine);
    const Grid& g = rec.grid;

    std::vector<std::string> tokens;
    for (const std::string& t : sc.reports) {
        require(detail::known_token(t), "run_scenario: unknown report token " + t);
        if (std::find(tokens.begin(), tokens.end(), t) == tokens.end()) tokens.push_back(t);
    }
    auto wants = [&](const std::string& t) {
        return std::find(tokens.begin(), tokens.end(), t) != tokens.end();
    };
    bool wants_determining = std::any_of(tokens.begin(), tokens.end(),
                                         detail::is_determining_token);
    bool wants_vorticity = std::any_of(tokens.begin(), tokens.end(),
                                       detail::is_vorticity_token);

    MhdState s = make_initial_state(sc, g);
    const Eos& eos = sc.eos;
    const double bref = linf(s.B);

    LagrangianMap live_map = make_map(g, sc.label_order);
    LabelData ld = make_label_data(live_map, s);
    LabelFrame frame = make_label_frame(live_map, s);
    Foliation fol = foliation_build(make_grid(g.nx, g.ny, g.nz, g.Lx, g.Ly, g.Lz,
                                              sc.label_order),
                                    scenario_foliation_closures(sc));

    int N = step_count(s, eos, sc.cfl, sc.t_end);
    double dt = sc.t_end / N;
    rec.steps = N;
    rec.dt = dt;

    // batch centers: semi-discrete tokens run on full states, snapshot-only
    // tokens (nfa15, or everything in snapshot mode) center a 3-state window
    std::set<int> semi_centers, snap_centers;
    bool snapshot_all = (sc.mode == ResidualMode::snapshot);
    bool any_semi = !snapshot_all && !tokens.empty();
    bool any_snap = snapshot_all ? !tokens.empty() : wants("nfa15");
    if (any_semi) {
        if (sc.cadence > 0) {
            semi_centers.insert(0);
            for (int i = sc.cadence; i <= N; i += sc.cadence) semi_centers.insert(i);
        }
        semi_centers.insert(N);
    }
    if (any_snap) {
        require(N >= 2, "run_scenario: snapshot residuals need at least 2 steps; lower "
                        "run.cfl or raise run.t_end");
        if (sc.cadence > 0)
            for (int i = sc.cadence; i <= N - 1; i += sc.cadence) snap_centers.insert(i);
        snap_centers.insert(N - 1);
    }

    SymmetryGenerator sym;
    sym.fol = &fol;

    auto emit_semi_tokens = [&](const StateWindow& w, ResidualMode mode,
                                const LagrangianMap& m) {
        std::vector<ConservationReport> vort;
        std::vector<ConservationReport> det;
        if (wants_vorticity) {
            VorticityResiduals vr = vorticity_residuals(w, "psi", mode, eos);
            vort.push_back(std::move(vr.momentum_form));
            vort.push_back(std::move(vr.vorticity_eq));
            vort.push_back(std::move(vr.grad_advect));
        }
        if (wants_determining) det = determining_residuals(w, mode, sym, eos);

        for (const std::string& t : tokens) {
            if (t == "eq1.2")
                rec.reports.push_back(pv_residual(w, "psi", PvVariant::hydro, mode, eos));
            else if (t == "eq1.3")
                rec.reports.push_back(pv_residual(w, "psi", PvVariant::mhd, mode, eos));
            else if (t == "nfa19")
                rec.reports.push_back(pv_residual(w, "psi", PvVariant::fullF, mode, eos));
            else if (t == "eq1.5")
                rec.reports.push_back(cheviakov_residual(w, canonical_cheviakov("psi"),
                                                         mode, eos));
            else if (t == "nfa34")
                rec.reports.push_back(vort[0]);
            else if (t == "nfa35")
                rec.reports.push_back(vort[1]);
            else if (t == "nfa36")
                rec.reports.push_back(vort[2]);
            else if (t == "eq4.35da")
                rec.reports.push_back(
                    noether_currents(m, ld, w, mode, frame, eos).conservation);
            else if (t == "nfa17")
                rec.reports.push_back(bianchi_euler_residual(w, mode, eos));
            else if (t == "nfa31")
                for (ConservationReport& r : advected_invariant_residuals(w, mode, eos))
                    rec.reports.push_back(std::move(r));
            else if (detail::is_determining_token(t))
                for (const ConservationReport& r : det)
                    if (r.name == t) rec.reports.push_back(r);
        }
    };

    // ring of the last three (state, map) snapshots
    std::deque<std::pair<MhdState, LagrangianMap>> ring;
    ring.emplace_back(s, live_map);
    rec.series.push_back(global_diagnostics(s, eos));

    if (semi_centers.count(0)) {
        Tendency tend = mhd_rhs(s, eos);
        emit_semi_tokens(semi_window(s, tend), ResidualMode::semi_discrete, live_map);
    }

    for (int i = 1; i <= N; ++i) {
        MhdState next = rk4_step(ring.back().first, eos, dt, {&live_map});
        ring.emplace_back(std::move(next), live_map);
        if (ring.size() > 3) ring.pop_front();
        rec.series.push_back(global_diagnostics(ring.back().first, eos));

        if (semi_centers.count(i)) {
            const MhdState& c = ring.back().first;
            Tendency tend = mhd_rhs(c, eos);
            emit_semi_tokens(semi_window(c, tend), ResidualMode::semi_discrete,
                             ring.back().second);
        }
        if (ring.size() == 3 && snap_centers.count(i - 1)) {
            const MhdState& sp = ring[0].first;
            const MhdState& sc_ = ring[1].first;
            const MhdState& sn = ring[2].first;
            StateWindow w = snapshot_window(sp, sc_, sn, dt);
            if (snapshot_all) emit_semi_tokens(w, ResidualMode::snapshot, ring[1].second);
            if (wants("nfa15")) {
                MapWindow mw;
                mw.prev = &ring[0].second;
                mw.center = &ring[1].second;
                mw.next = &ring[2].second;
                rec.reports.push_back(
                    bianchi_label_residual(w, mw, ld, frame.psi, eos));
            }
        }
    }

    const MhdState& sf = ring.back().first;
    if (sc.preset == "advection") {
        const Label& psi = sf.label("psi");
        double err = 0.0;
        for (int k = 0; k < g.nz; ++k)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    double exact = std::sin(g.x(i) - sf.t);
                    err = std::max(err, std::abs(psi.f.v[g.index(i, j, k)] - exact));
                }
        rec.has_advection_error = true;
        rec.advection_error = err;
    }

    const Diagnostics& d0 = rec.series.front();
    const Diagnostics& dN = rec.series.back();
    rec.mass_drift = std::abs(dN.total_mass - d0.total_mass) /
                     std::max(std::abs(d0.total_mass), 1e-300);
    rec.energy_drift = std::abs(dN.total_energy - d0.total_energy) /
                       std::max(std::abs(d0.total_energy), 1e-300);
    double divmax = 0.0;
    for (const Diagnostics& d : rec.series) divmax = std::max(divmax, d.divB_linf);
    rec.divB_rel_max = bref > 0.0 ? divmax / bref : divmax;

    rec.final_state = ring.back().first;
    rec.final_map = ring.back().second;
    return rec;
}

inline nlohmann::ordered_json record_json(const RunRecord& rec) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["config_hash"] = rec.scenario.config_hash;
    j["scenario"] = {{"name", rec.scenario.name},
                     {"preset", rec.scenario.preset},
                     {"foliation", scenario_foliation_closures(rec.scenario).name},
                     {"mode", mode_name(rec.scenario.mode)},
                     {"carry_A", rec.scenario.carry_A},
                     {"psi_from_entropy", rec.scenario.psi_from_entropy},
                     {"b_scale", rec.scenario.b_scale},
                     {"entropy_amp", rec.scenario.entropy_amp}};
    j["grid"] = {{"nx", rec.grid.nx},     {"ny", rec.grid.ny},
                 {"nz", rec.grid.nz},     {"Lx", rec.grid.Lx},
                 {"Ly", rec.grid.Ly},     {"Lz", rec.grid.Lz},
                 {"order", rec.grid.order}, {"label_order", rec.scenario.label_order},
                 {"refine", rec.refine}};
    j["run"] = {{"t_end", rec.scenario.t_end},
                {"cfl", rec.scenario.cfl},
                {"cadence", rec.scenario.cadence},
                {"steps", rec.steps},
                {"dt", rec.dt}};
    j["conservation"] = {{"mass_drift", rec.mass_drift},
                         {"energy_drift", rec.energy_drift},
                         {"divB_rel_max", rec.divB_rel_max}};
    if (rec.has_advection_error) j["advection_error"] = rec.advection_error;
    nlohmann::ordered_json reps = nlohmann::ordered_json::array();
    for (const ConservationReport& r : rec.reports) reps.push_back(r.to_json());
    j["reports"] = reps;
    return j;
}

inline void write_record(const RunRecord& rec, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    write_file_bytes(out_dir + "/run.json", record_json(rec).dump(2) + "\n");
    write_diagnostics_csv(out_dir + "/diagnostics.csv", rec.series);
    if (rec.scenario.dumps) {
        const MhdState& s = rec.final_state;
        write_field_dump(out_dir + "/rho.f64", "rho", s.rho, s.t);
        write_field_dump(out_dir + "/S.f64", "S", s.S, s.t);
        write_vector_dump(out_dir + "/u", "u", s.u, s.t);
        write_vector_dump(out_dir + "/B", "B", s.B, s.t);
        for (const Label& l : s.labels)
            write_field_dump(out_dir + "/label_" + l.name + ".f64", l.name, l.f, s.t);
        const LagrangianMap& m = rec.final_map;
        write_field_dump(out_dir + "/tracer_x.f64", "tracer_x",
                         ScalarField(m.lgrid, m.px), m.t);
        write_field_dump(out_dir + "/tracer_y.f64", "tracer_y",
                         ScalarField(m.lgrid, m.py), m.t);
        write_field_dump(out_dir + "/tracer_z.f64", "tracer_z",
                         ScalarField(m.lgrid, m.pz), m.t);
    }
}

}  // namespace mhdinv
