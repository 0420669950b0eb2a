// Deterministic reductions: fixed traversal order, never parallelized.
#pragma once

#include <algorithm>

#include "field.hpp"

namespace mhdinv {

inline double linf(const std::vector<double>& v) {
    double m = 0.0;
    for (double a : v) m = std::max(m, std::abs(a));
    return m;
}

inline double linf(const ScalarField& f) { return linf(f.v); }

inline double linf(const VectorField& f) {
    return std::max({linf(f.x), linf(f.y), linf(f.z)});
}

// L2 norm over the domain: sqrt(sum f^2 dV). The periodic trapezoid rule is a
// plain cell sum and is spectrally accurate for smooth periodic integrands.
inline double l2(const ScalarField& f) {
    double s = 0.0;
    for (double a : f.v) s += a * a;
    return std::sqrt(s * f.grid.cell_volume());
}

inline double l2(const VectorField& f) {
    double s = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n)
        s += f.x[n] * f.x[n] + f.y[n] * f.y[n] + f.z[n] * f.z[n];
    return std::sqrt(s * f.grid.cell_volume());
}

inline double integral(const ScalarField& f) {
    double s = 0.0;
    for (double a : f.v) s += a;
    return s * f.grid.cell_volume();
}

inline double min_value(const ScalarField& f) {
    double m = f.v.empty() ? 0.0 : f.v[0];
    for (double a : f.v) m = std::min(m, a);
    return m;
}

inline double max_value(const ScalarField& f) {
    double m = f.v.empty() ? 0.0 : f.v[0];
    for (double a : f.v) m = std::max(m, a);
    return m;
}

// Pointwise Euclidean magnitude of a vector field, as a scalar field.
inline ScalarField magnitude(const VectorField& f) {
    ScalarField out(f.grid);
    for (std::size_t n = 0; n < f.size(); ++n)
        out.v[n] = std::sqrt(f.x[n] * f.x[n] + f.y[n] * f.y[n] + f.z[n] * f.z[n]);
    return out;
}

}  // namespace mhdinv
