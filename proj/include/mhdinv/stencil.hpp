// Centered-difference first derivatives on the collocated periodic grid.
// All three axis operators are plain convolutions, so they commute exactly;
// div(curl) and curl(grad) therefore cancel to round-off, which is what keeps
// the induction update divergence-free.
#pragma once

#include "field.hpp"
#include "threads.hpp"

namespace mhdinv {

// One-sided halves of the centered first-derivative stencils:
// d/dx f(i) ~ (1/h) sum_m c[m-1] (f(i+m) - f(i-m)).
inline const std::vector<double>& central_half_coeffs(int order) {
    static const std::vector<double> c2{1.0 / 2.0};
    static const std::vector<double> c4{2.0 / 3.0, -1.0 / 12.0};
    static const std::vector<double> c6{3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
    static const std::vector<double> c8{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    switch (order) {
        case 2: return c2;
        case 4: return c4;
        case 6: return c6;
        case 8: return c8;
        default: fail("central_half_coeffs: unsupported order " + std::to_string(order));
    }
}

// d(field)/d(axis). An inactive axis (n == 1) yields the zero field.
// order_override = 0 uses the grid's configured order.
inline ScalarField derivative(const ScalarField& f, int axis, int order_override = 0) {
    const Grid& g = f.grid;
    ScalarField out(g);
    if (!g.active(axis)) return out;

    int order = order_override > 0 ? order_override : g.order;
    const std::vector<double>& c = central_half_coeffs(order);
    int w = static_cast<int>(c.size());
    double inv_h = 1.0 / g.h(axis);
    int n = g.n(axis);

    // index stride along the requested axis
    std::size_t stride = axis == 0 ? 1
                       : axis == 1 ? static_cast<std::size_t>(g.nx)
                                   : static_cast<std::size_t>(g.nx) * g.ny;

    const double* in = f.v.data();
    double* ov = out.v.data();
    std::size_t nxy = static_cast<std::size_t>(g.nx) * g.ny;

    parallel_for(g.size(), [&](std::size_t idx) {
        int i, pos;
        std::size_t base;
        if (axis == 0) {
            i = static_cast<int>(idx % g.nx);
            base = idx - static_cast<std::size_t>(i);
            pos = i;
        } else if (axis == 1) {
            std::size_t k = idx / nxy;
            std::size_t r = idx - k * nxy;
            int j = static_cast<int>(r / g.nx);
            base = idx - static_cast<std::size_t>(j) * stride;
            pos = j;
        } else {
            int k = static_cast<int>(idx / nxy);
            base = idx - static_cast<std::size_t>(k) * stride;
            pos = k;
        }
        double acc = 0.0;
        if (pos >= w && pos + w < n) {
            for (int m = 1; m <= w; ++m)
                acc += c[m - 1] * (in[idx + m * stride] - in[idx - m * stride]);
        } else {
            for (int m = 1; m <= w; ++m) {
                std::size_t ip = base + static_cast<std::size_t>(wrap_index(pos + m, n)) * stride;
                std::size_t im = base + static_cast<std::size_t>(wrap_index(pos - m, n)) * stride;
                acc += c[m - 1] * (in[ip] - in[im]);
            }
        }
        ov[idx] = acc * inv_h;
    });
    return out;
}

inline VectorField gradient(const ScalarField& f, int order_override = 0) {
    VectorField out(f.grid);
    out.x = derivative(f, 0, order_override).v;
    out.y = derivative(f, 1, order_override).v;
    out.z = derivative(f, 2, order_override).v;
    return out;
}

inline ScalarField divergence(const VectorField& f, int order_override = 0) {
    ScalarField out(f.grid);
    ScalarField cx = derivative(ScalarField(f.grid, f.x), 0, order_override);
    ScalarField cy = derivative(ScalarField(f.grid, f.y), 1, order_override);
    ScalarField cz = derivative(ScalarField(f.grid, f.z), 2, order_override);
    for (std::size_t n = 0; n < out.size(); ++n) out.v[n] = cx.v[n] + cy.v[n] + cz.v[n];
    return out;
}

inline VectorField curl(const VectorField& f, int order_override = 0) {
    const Grid& g = f.grid;
    ScalarField dy_z = derivative(ScalarField(g, f.z), 1, order_override);
    ScalarField dz_y = derivative(ScalarField(g, f.y), 2, order_override);
    ScalarField dz_x = derivative(ScalarField(g, f.x), 2, order_override);
    ScalarField dx_z = derivative(ScalarField(g, f.z), 0, order_override);
    ScalarField dx_y = derivative(ScalarField(g, f.y), 0, order_override);
    ScalarField dy_x = derivative(ScalarField(g, f.x), 1, order_override);
    VectorField out(g);
    for (std::size_t n = 0; n < out.size(); ++n) {
        out.x[n] = dy_z.v[n] - dz_y.v[n];
        out.y[n] = dz_x.v[n] - dx_z.v[n];
        out.z[n] = dx_y.v[n] - dy_x.v[n];
    }
    return out;
}

}  // namespace mhdinv
