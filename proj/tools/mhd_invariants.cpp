// Command-line front end: scenario runs, grid-refinement convergence studies,
// and the acceptance verification suite.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mhdinv/verify.hpp"

namespace {

mhdinv::Scenario load_scenario(const std::string& path) {
    mhdinv::Config cfg = mhdinv::load_config(path);
    mhdinv::Scenario sc = mhdinv::scenario_from_config(cfg);
    sc.config_hash = mhdinv::hex64(mhdinv::fnv1a64(cfg.canonical()));
    return sc;
}

double wall_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_run(const std::string& config_path, const std::string& out_override) {
    auto t0 = std::chrono::steady_clock::now();
    mhdinv::Scenario sc = load_scenario(config_path);
    if (!out_override.empty()) sc.out_dir = out_override;
    mhdinv::RunRecord rec = mhdinv::run_scenario(sc);
    mhdinv::write_record(rec, sc.out_dir);
    std::printf("scenario %s (%s), grid %dx%dx%d order %d, %d steps, dt %.6g\n",
                sc.name.c_str(), sc.preset.c_str(), rec.grid.nx, rec.grid.ny, rec.grid.nz,
                rec.grid.order, rec.steps, rec.dt);
    for (const mhdinv::ConservationReport& r : rec.reports)
        std::printf("  %-10s %-22s t=%-8.4g L2=%-12.6g Linf=%-12.6g\n", r.name.c_str(),
                    r.variant.c_str(), r.t, r.norms.l2, r.norms.linf);
    std::printf("mass_drift=%.3g energy_drift=%.3g divB_rel_max=%.3g\n", rec.mass_drift,
                rec.energy_drift, rec.divB_rel_max);
    if (rec.has_advection_error)
        std::printf("advection_error=%.6g\n", rec.advection_error);
    std::printf("outputs in %s, wall_s=%.2f\n", sc.out_dir.c_str(), wall_since(t0));
    return 0;
}

int cmd_convergence(const std::string& config_path, int levels) {
    auto t0 = std::chrono::steady_clock::now();
    mhdinv::Scenario sc = load_scenario(config_path);
    mhdinv::Config cfg = mhdinv::load_config(config_path);
    double default_floor =
        sc.mode == mhdinv::ResidualMode::semi_discrete ? sc.order - 0.5 : 1.5;
    double floor_ = cfg.get_double("convergence.floor", default_floor);
    const double noise = 1e-12;

    std::vector<mhdinv::RunRecord> recs;
    for (int lvl = 0; lvl < levels; ++lvl) {
        mhdinv::RunRecord rec = mhdinv::run_scenario(sc, 1 << lvl);
        mhdinv::write_record(rec, sc.out_dir + "/level-" + std::to_string(lvl));
        recs.push_back(std::move(rec));
    }

    // per report name: the last report of each level, L2 norms and orders
    std::vector<std::string> names;
    for (const mhdinv::ConservationReport& r : recs[0].reports) {
        std::string key = r.name + "/" + r.variant;
        bool seen = false;
        for (const std::string& n : names) seen = seen || n == key;
        if (!seen) names.push_back(key);
    }
    bool all_ok = true;
    std::printf("%-28s", "report");
    for (int lvl = 0; lvl < levels; ++lvl) std::printf("  L2@%-9dx", 1 << lvl);
    std::printf("  orders\n");
    for (const std::string& key : names) {
        std::vector<double> norms;
        for (const mhdinv::RunRecord& rec : recs) {
            const mhdinv::ConservationReport* found = nullptr;
            for (auto it = rec.reports.rbegin(); it != rec.reports.rend(); ++it)
                if (it->name + "/" + it->variant == key) {
                    found = &*it;
                    break;
                }
            mhdinv::require(found != nullptr, "missing report " + key + " at a level");
            norms.push_back(found->norms.l2);
        }
        std::printf("%-28s", key.c_str());
        for (double n : norms) std::printf("  %-12.5g", n);
        std::printf("  ");
        for (int i = 0; i + 1 < levels; ++i) {
            if (norms[i] <= noise && norms[i + 1] <= noise) {
                std::printf("NaN(pass) ");
                continue;
            }
            double p = mhdinv::observed_order(norms[i], norms[i + 1]);
            if (std::isnan(p)) {
                std::printf("NaN(warn) ");
                std::fprintf(stderr, "warning: non-monotone residuals for %s\n",
                             key.c_str());
                all_ok = false;
            } else {
                std::printf("%.2f ", p);
                all_ok = all_ok && p >= floor_;
            }
        }
        std::printf("\n");
    }
    std::printf("order floor %.2f, wall_s=%.2f\n", floor_, wall_since(t0));
    return all_ok ? 0 : 1;
}

int cmd_verify(const std::string& config_path) {
    auto t0 = std::chrono::steady_clock::now();
    mhdinv::Scenario base = mhdinv::default_verify_scenario();
    std::string out_dir = "out/verify";
    if (!config_path.empty()) {
        mhdinv::Scenario sc = load_scenario(config_path);
        base.nx = sc.nx;
        base.ny = sc.ny;
        base.nz = sc.nz;
        base.order = sc.order;
        base.label_order = sc.label_order;
        base.eos = sc.eos;
        base.cfl = sc.cfl;
        base.config_hash = sc.config_hash;
        out_dir = sc.out_dir + "/verify";
    }
    mhdinv::VerifySummary sum = mhdinv::acceptance_suite(base, out_dir);
    mhdinv::print_checks(sum, stdout);
    std::printf("wall_s=%.2f\n", wall_since(t0));
    return sum.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification toolkit for advected-invariant "
                 "conservation laws in ideal MHD"};
    app.require_subcommand(1);

    std::string run_config, run_out;
    CLI::App* run = app.add_subcommand("run", "run one scenario and write its record");
    run->add_option("--config", run_config, "config file")->required();
    run->add_option("--out", run_out, "output directory (overrides output.dir)");

    std::string conv_config;
    int conv_levels = 3;
    CLI::App* conv =
        app.add_subcommand("convergence", "grid-refinement study of the report norms");
    conv->add_option("--config", conv_config, "config file")->required();
    conv->add_option("--levels", conv_levels, "refinement levels (>= 2)")
        ->check(CLI::Range(2, 6));

    std::string verify_config;
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--config", verify_config, "config file (grid/eos/cfl base)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_config, run_out);
        if (conv->parsed()) return cmd_convergence(conv_config, conv_levels);
        if (verify->parsed()) return cmd_verify(verify_config);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
