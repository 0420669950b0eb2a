#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mhdinv/interp.hpp"
#include "mhdinv/reduce.hpp"

using namespace mhdinv;

namespace {

// cubic polynomial made periodic-safe by restricting queries away from the seam
double cubic3(double x, double y, double z) {
    return 0.5 + 1.25 * x - 0.75 * y + 0.3 * z + 0.2 * x * y - 0.1 * y * z +
           0.07 * x * x * x - 0.05 * y * y * z + 0.02 * x * y * z;
}

}  // namespace

TEST_CASE("cubic interpolation reproduces degree-3 polynomials between nodes",
          "[interp]") {
    Grid g = make_grid(20, 20, 20, 10.0, 10.0, 10.0, 4);
    ScalarField f(g);
    for (int k = 0; k < 20; ++k)
        for (int j = 0; j < 20; ++j)
            for (int i = 0; i < 20; ++i)
                f.v[g.index(i, j, k)] = cubic3(g.x(i), g.y(j), g.z(k));

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> mid(2.0, 7.0);  // keep off the seam
    std::vector<double> px, py, pz;
    for (int q = 0; q < 40; ++q) {
        px.push_back(mid(rng));
        py.push_back(mid(rng));
        pz.push_back(mid(rng));
    }
    Interpolator it(g, px, py, pz);
    auto vals = it.sample(f);
    for (int q = 0; q < 40; ++q)
        REQUIRE(vals[q] == Catch::Approx(cubic3(px[q], py[q], pz[q])).margin(1e-11));
}

TEST_CASE("node queries return the stored value bitwise", "[interp]") {
    Grid g = make_grid(16, 12, 8, 3.0, 2.0, 5.0, 2);
    ScalarField f(g);
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& v : f.v) v = u(rng);
    std::vector<double> px, py, pz;
    std::vector<double> expect;
    for (int q = 0; q < 30; ++q) {
        int i = rng() % 16, j = rng() % 12, k = rng() % 8;
        px.push_back(g.x(i));
        py.push_back(g.y(j));
        pz.push_back(g.z(k));
        expect.push_back(f.v[g.index(i, j, k)]);
    }
    Interpolator it(g, px, py, pz);
    auto vals = it.sample(f);
    for (int q = 0; q < 30; ++q) REQUIRE(vals[q] == expect[q]);
}

TEST_CASE("constant fields are sampled exactly everywhere", "[interp]") {
    Grid g = make_grid(10, 10, 1, 2 * M_PI, 2 * M_PI, 1.0, 2);
    ScalarField f(g);
    for (double& v : f.v) v = 3.7;
    for (double s : {0.001, 0.4999, 0.5001, 0.93})
        REQUIRE(sample_at(f, Vec3{s * g.Lx, s * g.Ly, 0.0}) == 3.7);
}

TEST_CASE("interpolation error decays at fourth order on smooth fields",
          "[interp]") {
    double err[2];
    for (int lvl = 0; lvl < 2; ++lvl) {
        int n = 16 << lvl;
        Grid g = make_grid(n, n, 1, 2 * M_PI, 2 * M_PI, 1.0, 4);
        ScalarField f(g);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                f.v[g.index(i, j, 0)] = std::sin(g.x(i)) * std::cos(2.0 * g.y(j));
        double e = 0.0;
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
        for (int q = 0; q < 200; ++q) {
            double x = u(rng), y = u(rng);
            e = std::max(e,
                         std::abs(sample_at(f, Vec3{x, y, 0.0}) -
                                  std::sin(x) * std::cos(2.0 * y)));
        }
        err[lvl] = e;
    }
    REQUIRE(std::log2(err[0] / err[1]) > 3.5);
}

TEST_CASE("sampling wraps periodically", "[interp]") {
    Grid g = make_grid(32, 1, 1, 2 * M_PI, 1.0, 1.0, 4);
    ScalarField f(g);
    for (int i = 0; i < 32; ++i) f.v[i] = std::sin(g.x(i));
    double a = sample_at(f, Vec3{0.3, 0.0, 0.0});
    double b = sample_at(f, Vec3{0.3 + 2 * M_PI, 0.0, 0.0});
    double c = sample_at(f, Vec3{0.3 - 4 * M_PI, 0.0, 0.0});
    REQUIRE(a == Catch::Approx(b).margin(1e-12));
    REQUIRE(a == Catch::Approx(c).margin(1e-12));
}

TEST_CASE("coordinate array mismatch and grid mismatch are rejected", "[interp]") {
    Grid g = make_grid(8, 8, 1, 1.0, 1.0, 1.0, 2);
    REQUIRE_THROWS(Interpolator(g, {0.1, 0.2}, {0.1}, {0.0, 0.0}));
    Interpolator it(g, {0.1}, {0.1}, {0.0});
    Grid g2 = make_grid(16, 8, 1, 1.0, 1.0, 1.0, 2);
    ScalarField f(g2);
    REQUIRE_THROWS(it.sample(f));
}
