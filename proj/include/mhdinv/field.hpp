// Scalar and vector fields on a periodic grid. Fields own their grid by value
// (a Grid is seven numbers), so states copy safely.
#pragma once

#include <functional>
#include <vector>

#include "core.hpp"

namespace mhdinv {

struct ScalarField {
    Grid grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0) : grid(g), v(g.size(), fill) {}
    ScalarField(const Grid& g, std::vector<double> data) : grid(g), v(std::move(data)) {
        require(v.size() == g.size(), "ScalarField: data size does not match grid");
    }

    double& operator()(int i, int j, int k) { return v[grid.index(i, j, k)]; }
    double operator()(int i, int j, int k) const { return v[grid.index(i, j, k)]; }
    std::size_t size() const { return v.size(); }
    bool empty() const { return v.empty(); }
};

struct VectorField {
    Grid grid;
    std::vector<double> x, y, z;

    VectorField() = default;
    explicit VectorField(const Grid& g, Vec3 fill = {})
        : grid(g), x(g.size(), fill.x), y(g.size(), fill.y), z(g.size(), fill.z) {}

    Vec3 at(std::size_t n) const { return {x[n], y[n], z[n]}; }
    void set(std::size_t n, const Vec3& v) {
        x[n] = v.x;
        y[n] = v.y;
        z[n] = v.z;
    }
    std::vector<double>& comp(int c) { return c == 0 ? x : (c == 1 ? y : z); }
    const std::vector<double>& comp(int c) const { return c == 0 ? x : (c == 1 ? y : z); }
    std::size_t size() const { return x.size(); }
    bool empty() const { return x.empty(); }
};

// Evaluate a closure on every node.
inline ScalarField sample_scalar(const Grid& g, const std::function<double(Vec3)>& f) {
    ScalarField out(g);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) out.v[g.index(i, j, k)] = f(g.node(i, j, k));
    return out;
}

inline VectorField sample_vector(const Grid& g, const std::function<Vec3(Vec3)>& f) {
    VectorField out(g);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) out.set(g.index(i, j, k), f(g.node(i, j, k)));
    return out;
}

inline bool all_finite(const std::vector<double>& v) {
    for (double a : v)
        if (!std::isfinite(a)) return false;
    return true;
}

inline bool all_finite(const ScalarField& f) { return all_finite(f.v); }

inline bool all_finite(const VectorField& f) {
    return all_finite(f.x) && all_finite(f.y) && all_finite(f.z);
}

}  // namespace mhdinv
