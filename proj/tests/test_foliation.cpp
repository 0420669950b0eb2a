#include <catch2/catch_amalgamated.hpp>

#include "mhdinv/foliation.hpp"
#include "mhdinv/reduce.hpp"
#include "test_util.hpp"

using namespace mhdinv;

namespace {

Grid lgrid(int n, int order) {
    return make_grid(n, n, 1, 2 * M_PI, 2 * M_PI, 2 * M_PI, order);
}

}  // namespace

TEST_CASE("cartesian potentials give the trivial basis to round-off", "[foliation]") {
    Foliation f = foliation_build(lgrid(16, 2), cartesian_foliation());
    BasisChecks bc = basis_checks(f);
    REQUIRE(bc.duality_err < 1e-13);
    REQUIRE(bc.metric_consistency < 1e-13);
    REQUIRE(bc.bracket_err < 1e-13);
    REQUIRE(bc.div_rho0V < 1e-13);
    REQUIRE(bc.div_B0 < 1e-13);
    REQUIRE(bc.curlform_vs_analytic < 1e-13);
    for (std::size_t n = 0; n < f.rho0.size(); ++n) {
        REQUIRE(f.rho0.v[n] == 1.0);
        // B0 = grad psi x grad phi = z x x = y; V0 = chi x psi / rho = x
        REQUIRE(f.B0.y[n] == 1.0);
        REQUIRE(f.B0.x[n] == 0.0);
        REQUIRE(f.V0.x[n] == 1.0);
        REQUIRE(f.b0.y[n] == 1.0);
    }
}

TEST_CASE("curved-basis defects shrink at the label stencil order", "[foliation]") {
    BasisChecks a = basis_checks(foliation_build(lgrid(32, 2), curved_foliation()));
    BasisChecks b = basis_checks(foliation_build(lgrid(64, 2), curved_foliation()));
    REQUIRE(a.duality_err / b.duality_err > 3.4);
    REQUIRE(a.curlform_vs_analytic / b.curlform_vs_analytic > 3.4);
    REQUIRE(a.metric_consistency / b.metric_consistency > 3.4);
    // this preset's bracket identity degenerates: both sides vanish pointwise,
    // so the defect sits at round-off on every grid
    REQUIRE(a.bracket_err < 1e-12);
    REQUIRE(b.bracket_err < 1e-12);
    // curl-form divergences are round-off by construction
    REQUIRE(b.div_rho0V_curlform < 1e-12);
    REQUIRE(b.div_B0_curlform < 1e-12);
}

TEST_CASE("separable shears satisfy the discrete bracket identity exactly", "[foliation]") {
    // phi = x + f(y), chi = y + g(x): the stencil acts along the coordinate the
    // other closure is constant in, so the bracket cancels algebraically
    BasisChecks a = basis_checks(foliation_build(lgrid(32, 2), sheared_foliation()));
    BasisChecks b = basis_checks(foliation_build(lgrid(64, 2), sheared_foliation()));
    REQUIRE(a.bracket_err < 1e-12);
    REQUIRE(b.bracket_err < 1e-12);
    REQUIRE(a.duality_err / b.duality_err > 3.4);
}

TEST_CASE("twisted-basis bracket defect converges at second order", "[foliation]") {
    // the chi closure mixes both coordinates, so the defect is genuine truncation
    BasisChecks a = basis_checks(foliation_build(lgrid(32, 2), twisted_foliation()));
    BasisChecks b = basis_checks(foliation_build(lgrid(64, 2), twisted_foliation()));
    REQUIRE(a.bracket_err > 1e-9);
    REQUIRE(a.bracket_err / b.bracket_err > 3.4);
    REQUIRE(a.duality_err / b.duality_err > 3.4);
}

TEST_CASE("rescaling one potential rescales exactly its own fields", "[foliation]") {
    FoliationClosures c1 = sheared_foliation();
    FoliationClosures c2 = c1;
    c2.psi.bg = c1.psi.bg * 2.0;
    auto base_p = c1.psi.periodic;
    auto base_g = c1.psi.periodic_grad;
    c2.psi.periodic = [base_p](Vec3 p) { return 2.0 * base_p(p); };
    c2.psi.periodic_grad = [base_g](Vec3 p) { return base_g(p) * 2.0; };

    Grid g = lgrid(24, 2);
    Foliation f1 = foliation_build(g, c1);
    Foliation f2 = foliation_build(g, c2);
    for (std::size_t n = 0; n < g.size(); ++n) {
        // B0 = grad psi x grad phi and rho0 = det both double; V0, b0 invariant
        REQUIRE(f2.rho0.v[n] == Catch::Approx(2.0 * f1.rho0.v[n]).epsilon(1e-14));
        REQUIRE(f2.B0.x[n] == Catch::Approx(2.0 * f1.B0.x[n]).margin(1e-14));
        REQUIRE(f2.B0.y[n] == Catch::Approx(2.0 * f1.B0.y[n]).margin(1e-14));
        REQUIRE(f2.V0.x[n] == Catch::Approx(f1.V0.x[n]).margin(1e-14));
        REQUIRE(f2.V0.y[n] == Catch::Approx(f1.V0.y[n]).margin(1e-14));
        REQUIRE(f2.b0.z[n] == Catch::Approx(f1.b0.z[n]).margin(1e-14));
    }
}

TEST_CASE("V0 x B0 recovers grad psi pointwise", "[foliation]") {
    Foliation f = foliation_build(lgrid(24, 2), sheared_foliation());
    for (std::size_t n = 0; n < f.lgrid.size(); ++n) {
        Vec3 lhs = cross(f.V0.at(n), f.B0.at(n));
        Vec3 d = lhs - f.grad_psi.at(n);
        REQUIRE(norm(d) < 1e-13);
    }
}

TEST_CASE("entropy closure is annihilated by V0", "[foliation]") {
    // S0 = S(chi, psi) and V0 points along the leaf intersection, so the
    // analytic directional derivative vanishes; discretely it is O(h^2)
    Foliation a = foliation_build(lgrid(32, 2), sheared_foliation());
    Foliation b = foliation_build(lgrid(64, 2), sheared_foliation());
    auto vds = [](const Foliation& f) {
        VectorField gS = gradient(f.S0);
        double e = 0.0;
        for (std::size_t n = 0; n < f.lgrid.size(); ++n)
            e = std::max(e, std::abs(dot(f.V0.at(n), gS.at(n))));
        return e;
    };
    double ea = vds(a), eb = vds(b);
    REQUIRE(ea / eb > 3.4);
    REQUIRE(eb < 1e-3);
}

TEST_CASE("degenerate potential triples are rejected", "[foliation]") {
    FoliationClosures c;
    c.phi = linear_potential({1, 0, 0});
    c.chi = linear_potential({1, 0, 0});  // parallel to phi: det = 0
    c.psi = linear_potential({0, 0, 1});
    REQUIRE_THROWS(foliation_build(lgrid(8, 2), c));
}

TEST_CASE("lie_bracket is exactly antisymmetric", "[foliation]") {
    Grid g = make_grid(20, 20, 20, 2 * M_PI, 2 * M_PI, 2 * M_PI, 2);
    VectorField a = testutil::fourier_vector(g, 3u);
    VectorField b = testutil::fourier_vector(g, 8u);
    VectorField ab = lie_bracket(a, b);
    VectorField ba = lie_bracket(b, a);
    for (std::size_t n = 0; n < g.size(); ++n) {
        REQUIRE(ab.x[n] == -ba.x[n]);
        REQUIRE(ab.y[n] == -ba.y[n]);
        REQUIRE(ab.z[n] == -ba.z[n]);
    }
}

TEST_CASE("foliation presets resolve by name", "[foliation]") {
    REQUIRE(foliation_by_name("cartesian").name == "cartesian");
    REQUIRE(foliation_by_name("curved").name == "curved");
    REQUIRE(foliation_by_name("sheared").name == "sheared");
    REQUIRE(foliation_by_name("twisted").name == "twisted");
    REQUIRE_THROWS(foliation_by_name("moebius"));
}
