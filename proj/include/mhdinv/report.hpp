// Conservation-law report: a named identity's discrete density, flux, and
// residual field at one time, with norms and premise residuals. JSON emission
// preserves insertion order and uses the library's shortest-roundtrip number
// formatting, so identical inputs serialize byte-identically.
#pragma once

#include <utility>

#include <json.hpp>

#include "reduce.hpp"

namespace mhdinv {

struct Norms {
    double l2 = 0.0;
    double linf = 0.0;
};

inline Norms norms_of(const ScalarField& f) { return {l2(f), linf(f)}; }
inline Norms norms_of(const VectorField& f) { return {l2(f), linf(f)}; }

struct ConservationReport {
    std::string name;     // equation tag, e.g. "eq1.3"
    std::string variant;  // e.g. "mhd", "hydro", "fullF"; empty when meaningless
    std::string mode;     // "semi-discrete" or "snapshot"
    std::string side;     // "label" or "euler" where a law has two homes
    double t = 0.0;
    Grid grid;

    ScalarField density;
    VectorField flux;
    ScalarField residual;
    Norms norms;
    // named premise residuals, e.g. {"div_N", ...}; order is emission order
    std::vector<std::pair<std::string, double>> premise_norms;

    void finalize() { norms = norms_of(residual); }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["name"] = name;
        j["variant"] = variant;
        j["mode"] = mode;
        j["t"] = t;
        j["grid"] = {{"nx", grid.nx}, {"ny", grid.ny}, {"nz", grid.nz}, {"order", grid.order}};
        j["norms"] = {{"L2", norms.l2}, {"Linf", norms.linf}};
        if (!premise_norms.empty()) {
            nlohmann::ordered_json p;
            for (const auto& [k, v] : premise_norms) p[k] = v;
            j["premise_norms"] = p;
        }
        if (!side.empty()) j["side"] = side;
        return j;
    }
};

}  // namespace mhdinv
