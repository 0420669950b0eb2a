#include <catch2/catch_amalgamated.hpp>

#include "mhdinv/reduce.hpp"
#include "mhdinv/stencil.hpp"
#include "test_util.hpp"

using namespace mhdinv;

namespace {

// Independent stencil oracle: solve the Vandermonde system sum_j c_j j^m =
// delta_{m,1} for offsets j in [-k, k] with long double elimination.
std::vector<long double> vandermonde_coeffs(int order) {
    int k = order / 2;
    int n = 2 * k + 1;
    std::vector<std::vector<long double>> A(n, std::vector<long double>(n + 1, 0.0L));
    for (int m = 0; m < n; ++m) {
        for (int j = -k; j <= k; ++j) A[m][j + k] = std::pow((long double)j, m);
        A[m][n] = (m == 1) ? 1.0L : 0.0L;
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            long double f = A[r][col] / A[col][col];
            for (int c = col; c <= n; ++c) A[r][c] -= f * A[col][c];
        }
    }
    std::vector<long double> c(n);
    for (int i = 0; i < n; ++i) c[i] = A[i][n] / A[i][i];
    return c;
}

}  // namespace

TEST_CASE("centered first-derivative coefficients match the Vandermonde solve",
          "[discrete]") {
    for (int order : {2, 4, 6, 8}) {
        Grid g = make_grid(64, 1, 1, 6.4, 1.0, 1.0, order);
        int i0 = 32;
        ScalarField delta(g);
        delta.v[i0] = 1.0;
        ScalarField d = derivative(delta, 0);
        auto oracle = vandermonde_coeffs(order);
        int k = order / 2;
        for (int j = -k; j <= k; ++j) {
            double got = g.hx() * d.v[g.index(i0 - j, 0, 0)];
            REQUIRE(std::abs(got - (double)oracle[j + k]) < 1e-13);
        }
        // nodes outside the stencil see exactly zero
        REQUIRE(d.v[g.index(i0 - k - 1, 0, 0)] == 0.0);
        REQUIRE(d.v[g.index(i0 + k + 1, 0, 0)] == 0.0);
    }
}

TEST_CASE("derivative of sin converges at the stencil order", "[discrete]") {
    for (int order : {2, 4, 6, 8}) {
        double err[2];
        for (int lvl = 0; lvl < 2; ++lvl) {
            int n = 48 << lvl;
            Grid g = make_grid(n, 1, 1, 2.0 * M_PI, 1.0, 1.0, order);
            ScalarField f(g);
            for (int i = 0; i < n; ++i) f.v[i] = std::sin(g.x(i));
            ScalarField d = derivative(f, 0);
            double e = 0.0;
            for (int i = 0; i < n; ++i)
                e = std::max(e, std::abs(d.v[i] - std::cos(g.x(i))));
            err[lvl] = e;
        }
        double observed = std::log2(err[0] / err[1]);
        REQUIRE(observed > order - 0.3);
    }
}

TEST_CASE("div of curl and curl of grad vanish to round-off", "[discrete]") {
    for (int order : {2, 4}) {
        Grid g3 = make_grid(24, 24, 24, 2 * M_PI, 4.0, 9.0, order);
        VectorField w = testutil::fourier_vector(g3, 11u);
        double scale = linf(w);
        REQUIRE(linf(divergence(curl(w))) < 1e-12 * scale);

        ScalarField f = testutil::fourier_scalar(g3, 23u);
        REQUIRE(linf(curl(gradient(f))) < 1e-12 * linf(f));
    }
}

TEST_CASE("2.5D grids have a null z-derivative", "[discrete]") {
    Grid g = make_grid(32, 32, 1, 2 * M_PI, 2 * M_PI, 2 * M_PI, 4);
    ScalarField f = testutil::fourier_scalar(g, 7u);
    ScalarField dz = derivative(f, 2);
    for (double v : dz.v) REQUIRE(v == 0.0);
}

TEST_CASE("derivative is exactly odd: D(-f) = -D(f) bitwise", "[discrete]") {
    Grid g = make_grid(32, 32, 1, 2 * M_PI, 2 * M_PI, 2 * M_PI, 6);
    ScalarField f = testutil::fourier_scalar(g, 5u);
    ScalarField nf(g);
    for (std::size_t n = 0; n < f.v.size(); ++n) nf.v[n] = -f.v[n];
    ScalarField d = derivative(f, 0), dn = derivative(nf, 0);
    for (std::size_t n = 0; n < d.v.size(); ++n) REQUIRE(dn.v[n] == -d.v[n]);
}

TEST_CASE("order override changes the stencil used", "[discrete]") {
    Grid g = make_grid(64, 1, 1, 2 * M_PI, 1.0, 1.0, 4);
    ScalarField f(g);
    for (int i = 0; i < 64; ++i) f.v[i] = std::sin(g.x(i));
    ScalarField d2 = derivative(f, 0, 2);
    ScalarField d4 = derivative(f, 0);
    double e2 = 0.0, e4 = 0.0;
    for (int i = 0; i < 64; ++i) {
        e2 = std::max(e2, std::abs(d2.v[i] - std::cos(g.x(i))));
        e4 = std::max(e4, std::abs(d4.v[i] - std::cos(g.x(i))));
    }
    REQUIRE(e2 > 50.0 * e4);
}

TEST_CASE("grid index wrapping is periodic", "[discrete]") {
    REQUIRE(wrap_index(-1, 16) == 15);
    REQUIRE(wrap_index(16, 16) == 0);
    REQUIRE(wrap_index(35, 16) == 3);
    double w = wrap_coord(-0.25, 1.0);
    REQUIRE(w >= 0.0);
    REQUIRE(std::abs(w - 0.75) < 1e-15);
}

TEST_CASE("reductions: norms and integral on known fields", "[discrete]") {
    Grid g = make_grid(64, 64, 1, 2 * M_PI, 2 * M_PI, 2 * M_PI, 4);
    ScalarField f(g);
    for (int j = 0; j < 64; ++j)
        for (int i = 0; i < 64; ++i) f.v[g.index(i, j, 0)] = std::sin(g.x(i));
    // integral of sin over full periods is zero; L2 = sqrt(V/2), sup = ~1
    REQUIRE(std::abs(integral(f)) < 1e-12);
    double vol = g.Lx * g.Ly * g.Lz;
    REQUIRE(std::abs(l2(f) - std::sqrt(vol / 2.0)) < 1e-10);
    REQUIRE(std::abs(linf(f) - 1.0) < 1e-3);
}
