// Shared test helpers: seeded smooth periodic fields and tolerance helpers.
#pragma once

#include <random>

#include "mhdinv/field.hpp"
#include "mhdinv/reduce.hpp"
#include "mhdinv/stencil.hpp"

namespace testutil {

// Smooth periodic scalar from a few seeded Fourier modes; deterministic.
inline mhdinv::ScalarField fourier_scalar(const mhdinv::Grid& g, unsigned seed,
                                          int kmax = 2) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    struct Mode {
        int kx, ky, kz;
        double a, b;
    };
    std::vector<Mode> modes;
    for (int kx = 0; kx <= kmax; ++kx)
        for (int ky = -kmax; ky <= kmax; ++ky)
            for (int kz = -kmax; kz <= kmax; ++kz) {
                if (kx == 0 && ky == 0 && kz == 0) continue;
                modes.push_back({kx, ky, kz, amp(rng), amp(rng)});
            }
    mhdinv::ScalarField f(g);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                double x = g.x(i), y = g.y(j), z = g.z(k);
                double v = 0.0;
                for (const Mode& m : modes) {
                    if (g.ny == 1 && m.ky != 0) continue;
                    if (g.nz == 1 && m.kz != 0) continue;
                    double ph = (2.0 * M_PI / g.Lx) * m.kx * x +
                                (2.0 * M_PI / g.Ly) * m.ky * y +
                                (2.0 * M_PI / g.Lz) * m.kz * z;
                    v += m.a * std::cos(ph) + m.b * std::sin(ph);
                }
                f.v[g.index(i, j, k)] = v;
            }
    return f;
}

inline mhdinv::VectorField fourier_vector(const mhdinv::Grid& g, unsigned seed,
                                          int kmax = 2) {
    mhdinv::VectorField out(g);
    out.x = fourier_scalar(g, seed, kmax).v;
    out.y = fourier_scalar(g, seed + 1, kmax).v;
    out.z = fourier_scalar(g, seed + 2, kmax).v;
    return out;
}

}  // namespace testutil
