// Core value types: error helpers, 3-vectors, 3x3 matrices, periodic grid.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace mhdinv {

[[noreturn]] inline void fail(const std::string& msg) {
    throw std::runtime_error(msg);
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// Row-major 3x3 matrix; m[i][j] is row i, column j.
struct Mat3 {
    std::array<std::array<double, 3>, 3> m{};

    static Mat3 identity() {
        Mat3 r;
        r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
        return r;
    }

    double& operator()(int i, int j) { return m[i][j]; }
    double operator()(int i, int j) const { return m[i][j]; }
};

inline Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
    return r;
}

inline Mat3 operator*(double s, const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = s * a.m[i][j];
    return r;
}

inline Mat3 matmul(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a.m[i][k] * b.m[k][j];
            r.m[i][j] = s;
        }
    return r;
}

// r_i = sum_j a_ij v_j
inline Vec3 matvec(const Mat3& a, const Vec3& v) {
    return {a.m[0][0] * v.x + a.m[0][1] * v.y + a.m[0][2] * v.z,
            a.m[1][0] * v.x + a.m[1][1] * v.y + a.m[1][2] * v.z,
            a.m[2][0] * v.x + a.m[2][1] * v.y + a.m[2][2] * v.z};
}

// r_j = sum_i v_i a_ij
inline Vec3 matvec_t(const Mat3& a, const Vec3& v) {
    return {a.m[0][0] * v.x + a.m[1][0] * v.y + a.m[2][0] * v.z,
            a.m[0][1] * v.x + a.m[1][1] * v.y + a.m[2][1] * v.z,
            a.m[0][2] * v.x + a.m[1][2] * v.y + a.m[2][2] * v.z};
}

inline Mat3 transpose(const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[j][i];
    return r;
}

inline double det(const Mat3& a) {
    return a.m[0][0] * (a.m[1][1] * a.m[2][2] - a.m[1][2] * a.m[2][1]) -
           a.m[0][1] * (a.m[1][0] * a.m[2][2] - a.m[1][2] * a.m[2][0]) +
           a.m[0][2] * (a.m[1][0] * a.m[2][1] - a.m[1][1] * a.m[2][0]);
}

// Cofactor matrix C with C_ij = d det(A) / d A_ij, so A C^T = C A^T = det(A) I.
inline Mat3 cofactor(const Mat3& a) {
    Mat3 c;
    c.m[0][0] = a.m[1][1] * a.m[2][2] - a.m[1][2] * a.m[2][1];
    c.m[0][1] = a.m[1][2] * a.m[2][0] - a.m[1][0] * a.m[2][2];
    c.m[0][2] = a.m[1][0] * a.m[2][1] - a.m[1][1] * a.m[2][0];
    c.m[1][0] = a.m[0][2] * a.m[2][1] - a.m[0][1] * a.m[2][2];
    c.m[1][1] = a.m[0][0] * a.m[2][2] - a.m[0][2] * a.m[2][0];
    c.m[1][2] = a.m[0][1] * a.m[2][0] - a.m[0][0] * a.m[2][1];
    c.m[2][0] = a.m[0][1] * a.m[1][2] - a.m[0][2] * a.m[1][1];
    c.m[2][1] = a.m[0][2] * a.m[1][0] - a.m[0][0] * a.m[1][2];
    c.m[2][2] = a.m[0][0] * a.m[1][1] - a.m[0][1] * a.m[1][0];
    return c;
}

inline Mat3 inverse(const Mat3& a) {
    double d = det(a);
    require(d != 0.0, "Mat3 inverse: singular matrix");
    return (1.0 / d) * transpose(cofactor(a));
}

// Uniform collocated periodic grid. nz == 1 selects the 2.5D mode where every
// z derivative is identically zero. Data layout is x-fastest:
// index(i,j,k) = (k*ny + j)*nx + i.
struct Grid {
    int nx = 1, ny = 1, nz = 1;
    double Lx = 1.0, Ly = 1.0, Lz = 1.0;
    int order = 4;  // centered-difference order of the Eulerian operators

    std::size_t size() const {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
               static_cast<std::size_t>(nz);
    }
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(k) * ny + j) * nx + i;
    }

    double hx() const { return Lx / nx; }
    double hy() const { return Ly / ny; }
    double hz() const { return Lz / nz; }
    double h(int axis) const { return axis == 0 ? hx() : (axis == 1 ? hy() : hz()); }

    int n(int axis) const { return axis == 0 ? nx : (axis == 1 ? ny : nz); }
    double L(int axis) const { return axis == 0 ? Lx : (axis == 1 ? Ly : Lz); }
    bool active(int axis) const { return n(axis) > 1; }

    // smallest spacing among active dimensions
    double h_min() const {
        double h = 0.0;
        bool any = false;
        for (int a = 0; a < 3; ++a)
            if (active(a)) {
                h = any ? std::min(h, this->h(a)) : this->h(a);
                any = true;
            }
        require(any, "Grid: no active dimension");
        return h;
    }

    double cell_volume() const { return hx() * hy() * hz(); }

    double x(int i) const { return i * hx(); }
    double y(int j) const { return j * hy(); }
    double z(int k) const { return k * hz(); }
    Vec3 node(int i, int j, int k) const { return {x(i), y(j), z(k)}; }
};

inline bool operator==(const Grid& a, const Grid& b) {
    return a.nx == b.nx && a.ny == b.ny && a.nz == b.nz && a.Lx == b.Lx && a.Ly == b.Ly &&
           a.Lz == b.Lz && a.order == b.order;
}

inline Grid make_grid(int nx, int ny, int nz, double Lx, double Ly, double Lz, int order = 4) {
    require(order >= 2 && order <= 8 && order % 2 == 0,
            "make_grid: order must be one of 2, 4, 6, 8 (got " + std::to_string(order) + ")");
    Grid g{nx, ny, nz, Lx, Ly, Lz, order};
    for (int a = 0; a < 3; ++a) {
        require(g.n(a) >= 1, "make_grid: nonpositive point count");
        require(g.L(a) > 0.0, "make_grid: nonpositive domain length");
        require(!g.active(a) || g.n(a) >= 4 * order,
                "make_grid: active dimension needs at least 4*order points (axis " +
                    std::to_string(a) + ": " + std::to_string(g.n(a)) + " < " +
                    std::to_string(4 * order) + ")");
    }
    return g;
}

// Map a coordinate into [0, L).
inline double wrap_coord(double p, double L) {
    double r = p - L * std::floor(p / L);
    if (r >= L) r -= L;  // guards the p = -epsilon rounding corner
    return r;
}

inline int wrap_index(int i, int n) {
    int r = i % n;
    return r < 0 ? r + n : r;
}

}  // namespace mhdinv
