// Prognostic Eulerian state. Labels are advected scalars; a label may carry a
// constant background gradient `bg` so that winding potentials (value = bg.x0
// + periodic part) can live on the periodic grid: the stored field is the
// periodic part, the advection tendency is -u.(grad f + bg), and every
// consumer reads the gradient as grad f + bg.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eos.hpp"
#include "field.hpp"
#include "stencil.hpp"

namespace mhdinv {

struct Label {
    std::string name;
    ScalarField f;
    Vec3 bg{};
};

struct MhdState {
    Grid grid;
    double t = 0.0;
    ScalarField rho, S;
    VectorField u, B;
    std::vector<Label> labels;
    std::optional<VectorField> A;    // vector potential, Lie-dragged A.dx gauge
    std::optional<ScalarField> Phi;  // static external potential

    const Label& label(const std::string& name) const {
        for (const Label& l : labels)
            if (l.name == name) return l;
        fail("MhdState: no label named '" + name + "'");
    }
    bool has_label(const std::string& name) const {
        for (const Label& l : labels)
            if (l.name == name) return true;
        return false;
    }
};

struct Tendency {
    ScalarField rho, S;
    VectorField u, B;
    std::vector<ScalarField> labels;
    std::optional<VectorField> A;
};

inline MhdState make_state(const Grid& g) {
    MhdState s;
    s.grid = g;
    s.rho = ScalarField(g, 1.0);
    s.S = ScalarField(g, 0.0);
    s.u = VectorField(g);
    s.B = VectorField(g);
    return s;
}

// grad(label) including the background part
inline VectorField label_gradient(const Grid& g, const Label& l, int order_override = 0) {
    VectorField out = gradient(l.f, order_override);
    for (std::size_t n = 0; n < out.size(); ++n) {
        out.x[n] += l.bg.x;
        out.y[n] += l.bg.y;
        out.z[n] += l.bg.z;
    }
    (void)g;
    return out;
}

inline void check_state(const MhdState& s) {
    const Grid& g = s.grid;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                double r = s.rho(i, j, k);
                if (!(r > 0.0) || !std::isfinite(r))
                    fail("state: invalid density " + std::to_string(r) + " at (" +
                         std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                         "), t = " + std::to_string(s.t));
            }
    require(all_finite(s.S) && all_finite(s.u) && all_finite(s.B),
            "state: non-finite field value at t = " + std::to_string(s.t));
}

}  // namespace mhdinv
