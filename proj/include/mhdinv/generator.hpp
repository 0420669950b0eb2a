// Eulerian relabelling generator Vhat = grad psi x grad chi / rho built from
// two advected labels, plus its semi-discrete time derivative assembled from
// RHS tendencies by the product rule.
#pragma once

#include "conservation.hpp"
#include "rhs.hpp"

namespace mhdinv {

struct EulerGenerator {
    VectorField W;     // grad psi x grad chi
    VectorField Vhat;  // W / rho
};

inline EulerGenerator euler_generator(const MhdState& s, const std::string& psi = "psi",
                                      const std::string& chi = "chi") {
    EulerGenerator g;
    VectorField gp = label_gradient(s.grid, s.label(psi));
    VectorField gc = label_gradient(s.grid, s.label(chi));
    g.W = cross_field(gp, gc);
    g.Vhat = VectorField(s.grid);
    for (std::size_t n = 0; n < s.grid.size(); ++n) g.Vhat.set(n, g.W.at(n) / s.rho.v[n]);
    return g;
}

// partial_t Vhat = (grad dpsi x grad chi + grad psi x grad dchi)/rho - Vhat drho/rho
inline VectorField euler_generator_rate(const MhdState& s, const Tendency& t,
                                        const EulerGenerator& g, const std::string& psi = "psi",
                                        const std::string& chi = "chi") {
    VectorField gp = label_gradient(s.grid, s.label(psi));
    VectorField gc = label_gradient(s.grid, s.label(chi));
    VectorField dgp = detail::label_gradient_rate(s, t, psi);
    VectorField dgc = detail::label_gradient_rate(s, t, chi);
    VectorField out(s.grid);
    for (std::size_t n = 0; n < s.grid.size(); ++n) {
        Vec3 dW = cross(dgp.at(n), gc.at(n)) + cross(gp.at(n), dgc.at(n));
        double ir = 1.0 / s.rho.v[n];
        out.set(n, dW * ir - g.Vhat.at(n) * (t.rho.v[n] * ir));
    }
    return out;
}

}  // namespace mhdinv
