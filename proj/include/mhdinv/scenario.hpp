// Scenario presets and their closed-form initial conditions. Every preset is
// analytic, so a scenario can be instantiated at any refinement level; all
// preset magnetic fields are divergence-free under the discrete stencils
// (each component is constant along its own axis).
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "config.hpp"
#include "conservation.hpp"
#include "eos.hpp"
#include "foliation.hpp"
#include "state.hpp"

namespace mhdinv {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Scenario {
    std::string name = "run";
    std::string preset = "orszag-tang-25d";
    int nx = 64, ny = 64, nz = 1;
    double Lx = kTwoPi, Ly = kTwoPi, Lz = kTwoPi;
    int order = 4;
    int label_order = 2;
    Eos eos;
    std::string foliation;  // empty = preset default
    double t_end = 0.2;
    double cfl = 0.4;
    int cadence = 0;  // steps between report batches; 0 = one batch at the end
    ResidualMode mode = ResidualMode::semi_discrete;
    bool carry_A = false;
    bool psi_from_entropy = false;
    double b_scale = 1.0;
    double entropy_amp = 0.05;
    std::vector<std::string> reports;
    std::string out_dir = "out";
    bool dumps = false;
    std::string config_hash;  // fnv1a64 of the canonical config text, hex
};

inline ResidualMode mode_from_string(const std::string& s) {
    if (s == "semi-discrete") return ResidualMode::semi_discrete;
    if (s == "snapshot") return ResidualMode::snapshot;
    fail("unknown residual mode: " + s + " (expected semi-discrete|snapshot)");
}

inline Scenario scenario_from_config(const Config& cfg) {
    Scenario sc;
    sc.name = cfg.get("scenario.name", "run");
    sc.preset = cfg.get("scenario.preset", "orszag-tang-25d");
    sc.nx = cfg.get_int("grid.nx", 64);
    sc.ny = cfg.get_int("grid.ny", 64);
    sc.nz = cfg.get_int("grid.nz", 1);
    sc.Lx = cfg.get_double("grid.Lx", kTwoPi);
    sc.Ly = cfg.get_double("grid.Ly", kTwoPi);
    sc.Lz = cfg.get_double("grid.Lz", kTwoPi);
    sc.order = cfg.get_int("grid.order", 4);
    sc.label_order = cfg.get_int("grid.label_order", 2);
    sc.eos.gamma = cfg.get_double("eos.gamma", 5.0 / 3.0);
    sc.eos.cv = cfg.get_double("eos.cv", 1.0);
    sc.eos.s_ref = cfg.get_double("eos.s_ref", 0.0);
    sc.eos.mu0 = cfg.get_double("eos.mu0", 1.0);
    sc.foliation = cfg.get("scenario.foliation", "");
    sc.t_end = cfg.get_double("run.t_end", 0.2);
    sc.cfl = cfg.get_double("run.cfl", 0.4);
    sc.cadence = cfg.get_int("run.cadence", 0);
    sc.mode = mode_from_string(cfg.get("run.mode", "semi-discrete"));
    sc.carry_A = cfg.get_bool("scenario.carry_A", false);
    sc.psi_from_entropy = cfg.get_bool("scenario.psi_from_entropy", false);
    sc.b_scale = cfg.get_double("scenario.b_scale", 1.0);
    sc.entropy_amp = cfg.get_double("scenario.entropy_amp", 0.05);
    sc.reports = cfg.get_list("reports.list");
    if (sc.reports.empty())
        sc.reports = {"eq1.2",    "eq1.3", "eq1.5", "eq4.35da", "nfa15",
                      "nfa17",    "nfa34", "nfa35", "nfa36"};
    sc.out_dir = cfg.get("output.dir", "out");
    sc.dumps = cfg.get_bool("output.dumps", false);
    return sc;
}

inline Grid scenario_grid(const Scenario& sc, int refine = 1) {
    require(refine >= 1, "scenario_grid: refine must be >= 1");
    auto scale = [&](int n) { return n > 1 ? n * refine : n; };
    return make_grid(scale(sc.nx), scale(sc.ny), scale(sc.nz), sc.Lx, sc.Ly, sc.Lz, sc.order);
}

// Foliation used by a scenario for generator construction and, in the
// custom-closures preset, for the initial condition itself.
inline FoliationClosures scenario_foliation_closures(const Scenario& sc) {
    std::string name = sc.foliation;
    if (name.empty()) name = sc.preset == "custom-closures" ? "sheared" : "cartesian";
    return foliation_by_name(name);
}

namespace detail {

inline void seed_labels_from_closures(MhdState& s, const FoliationClosures& c) {
    s.labels.push_back(Label{"phi", sample_scalar(s.grid, c.phi.periodic), c.phi.bg});
    s.labels.push_back(Label{"chi", sample_scalar(s.grid, c.chi.periodic), c.chi.bg});
    s.labels.push_back(Label{"psi", sample_scalar(s.grid, c.psi.periodic), c.psi.bg});
}

}  // namespace detail

inline MhdState make_initial_state(const Scenario& sc, const Grid& g) {
    MhdState s = make_state(g);
    const Eos& eos = sc.eos;

    if (sc.preset == "uniform") {
        // rho = 1, p = 1 (S = 0 for the default EOS), u = 0, constant B
        s.rho = ScalarField(g, 1.0);
        s.S = ScalarField(g, eos.entropy_for_pressure(1.0, 1.0));
        s.u = VectorField(g);
        s.B = VectorField(g, Vec3{1.0, 0.5, 0.25} * sc.b_scale);
        detail::seed_labels_from_closures(s, scenario_foliation_closures(sc));
    } else if (sc.preset == "advection") {
        // unit x-advection of psi = sin x; closed-form solution sin(x - t)
        s.rho = ScalarField(g, 1.0);
        s.S = ScalarField(g, eos.entropy_for_pressure(1.0, 1.0));
        s.u = VectorField(g, Vec3{1.0, 0.0, 0.0});
        s.B = VectorField(g);
        s.labels.push_back(Label{"phi", ScalarField(g), Vec3{1, 0, 0}});
        s.labels.push_back(Label{"chi", ScalarField(g), Vec3{0, 1, 0}});
        s.labels.push_back(
            Label{"psi", sample_scalar(g, [](Vec3 p) { return std::sin(p.x); }), Vec3{}});
    } else if (sc.preset == "shear-alfven") {
        s.rho = ScalarField(g, 1.0);
        s.S = ScalarField(g, eos.entropy_for_pressure(1.0, 1.0));
        s.u = sample_vector(g, [](Vec3 p) { return Vec3{0.0, -0.1 * std::sin(p.x), 0.0}; });
        s.B = sample_vector(g, [&](Vec3 p) {
            return Vec3{1.0, 0.1 * sc.b_scale * std::sin(p.x), 0.0};
        });
        detail::seed_labels_from_closures(s, scenario_foliation_closures(sc));
    } else if (sc.preset == "orszag-tang-25d") {
        double gam = eos.gamma;
        double s_base = eos.entropy_for_pressure(gam * gam, gam);
        s.rho = ScalarField(g, gam * gam);
        s.S = sample_scalar(g, [&](Vec3 p) {
            return s_base + sc.entropy_amp * std::sin(p.x) * std::sin(p.y);
        });
        s.u = sample_vector(g, [](Vec3 p) {
            return Vec3{-std::sin(p.y), std::sin(p.x), 0.2 * std::sin(p.x + p.y)};
        });
        s.B = sample_vector(g, [&](Vec3 p) {
            return Vec3{-std::sin(p.y), std::sin(2.0 * p.x), 0.2 * std::cos(p.x + p.y)} *
                   sc.b_scale;
        });
        s.labels.push_back(Label{
            "phi", sample_scalar(g, [](Vec3 p) { return std::sin(p.x) * std::cos(p.y); }),
            Vec3{}});
        s.labels.push_back(Label{
            "chi", sample_scalar(g, [](Vec3 p) { return std::cos(p.x) * std::sin(p.y); }),
            Vec3{}});
        if (sc.psi_from_entropy)
            s.labels.push_back(Label{"psi", s.S, Vec3{}});
        else
            s.labels.push_back(Label{
                "psi", sample_scalar(g, [](Vec3 p) { return std::sin(p.x) * std::sin(p.y); }),
                Vec3{}});
        if (sc.carry_A)
            s.A = sample_vector(g, [&](Vec3 p) {
                return Vec3{0.0, 0.2 * std::sin(p.x + p.y),
                            std::cos(p.y) + 0.5 * std::cos(2.0 * p.x)} *
                       sc.b_scale;
            });
    } else if (sc.preset == "custom-closures") {
        // foliation-compatible data: rho = rho0, S = S0(chi, psi), B = B0,
        // with the reference vortical velocity on top
        FoliationClosures c = scenario_foliation_closures(sc);
        s.rho = sample_scalar(g, [&](Vec3 p) {
            Vec3 gp = c.phi.full_grad(p), gc = c.chi.full_grad(p), gs = c.psi.full_grad(p);
            return dot(gp, cross(gc, gs));
        });
        s.S = sample_scalar(g, [&](Vec3 p) {
            return c.entropy(c.chi.full(p), c.psi.full(p));
        });
        s.u = sample_vector(g, [](Vec3 p) {
            return Vec3{-std::sin(p.y), std::sin(p.x), 0.2 * std::sin(p.x + p.y)};
        });
        s.B = sample_vector(g, [&](Vec3 p) {
            return cross(c.psi.full_grad(p), c.phi.full_grad(p)) * sc.b_scale;
        });
        detail::seed_labels_from_closures(s, c);
    } else {
        fail("unknown scenario preset: " + sc.preset);
    }
    check_state(s);
    return s;
}

}  // namespace mhdinv
