// Lagrangian tracer map: one tracer per node of a label grid that coincides
// with the initial Eulerian grid. Carries absolute positions x(x0, t) and the
// deformation gradient F_ij = dx^i/dx0^j integrated as an ODE alongside the
// flow. Label-space stencils act on fields stored over the tracer lattice,
// which are periodic in x0 (positions themselves are not; use F for their
// derivatives).
#pragma once

#include "interp.hpp"
#include "rhs.hpp"

namespace mhdinv {

struct LagrangianMap {
    Grid lgrid;                      // label-space grid; order applies to d/dx0 stencils
    std::vector<double> px, py, pz;  // tracer positions, unwrapped
    std::vector<Mat3> F;             // deformation gradient
    double t = 0.0;

    std::size_t size() const { return px.size(); }
};

// Full map over the label grid. The label grid shares the Eulerian extents but
// carries its own (lower) stencil order.
inline LagrangianMap make_map(const Grid& eulerian, int label_order = 2) {
    LagrangianMap m;
    m.lgrid = make_grid(eulerian.nx, eulerian.ny, eulerian.nz, eulerian.Lx, eulerian.Ly,
                        eulerian.Lz, label_order);
    const Grid& g = m.lgrid;
    m.px.resize(g.size());
    m.py.resize(g.size());
    m.pz.resize(g.size());
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                std::size_t n = g.index(i, j, k);
                m.px[n] = g.x(i);
                m.py[n] = g.y(j);
                m.pz[n] = g.z(k);
            }
    m.F.assign(g.size(), Mat3::identity());
    return m;
}

// Free-floating tracer cloud. Positions and F advance exactly like a map's,
// but there is no label grid, so the geometry functions below do not apply.
inline LagrangianMap make_tracers(const std::vector<Vec3>& pts) {
    LagrangianMap m;
    m.px.reserve(pts.size());
    m.py.reserve(pts.size());
    m.pz.reserve(pts.size());
    for (const Vec3& p : pts) {
        m.px.push_back(p.x);
        m.py.push_back(p.y);
        m.pz.push_back(p.z);
    }
    m.F.assign(pts.size(), Mat3::identity());
    return m;
}

inline Interpolator map_interpolator(const LagrangianMap& m, const Grid& eulerian) {
    return Interpolator(eulerian, m.px, m.py, m.pz);
}

// Initial-state fields rebound to the label grid. These are the reference
// densities the map reconstructs from.
struct LabelData {
    ScalarField rho0, S0;
    VectorField B0;
};

inline LabelData make_label_data(const LagrangianMap& m, const MhdState& initial) {
    const Grid& lg = m.lgrid;
    require(initial.grid.nx == lg.nx && initial.grid.ny == lg.ny && initial.grid.nz == lg.nz,
            "make_label_data: initial state extents differ from the label grid");
    LabelData ld;
    ld.rho0 = ScalarField(lg, initial.rho.v);
    ld.S0 = ScalarField(lg, initial.S.v);
    ld.B0 = VectorField(lg);
    ld.B0.x = initial.B.x;
    ld.B0.y = initial.B.y;
    ld.B0.z = initial.B.z;
    return ld;
}

// Initial label fields carried over to the label grid; the relabelling
// machinery reads the generator pair (psi, chi) from here.
struct LabelFrame {
    Label phi, chi, psi;
};

inline LabelFrame make_label_frame(const LagrangianMap& m, const MhdState& initial) {
    const Grid& lg = m.lgrid;
    require(initial.grid.nx == lg.nx && initial.grid.ny == lg.ny && initial.grid.nz == lg.nz,
            "make_label_frame: initial state extents differ from the label grid");
    auto carry = [&](const char* name) {
        const Label& src = initial.label(name);
        Label out;
        out.name = src.name;
        out.bg = src.bg;
        out.f = ScalarField(lg, src.f.v);
        return out;
    };
    LabelFrame fr;
    fr.phi = carry("phi");
    fr.chi = carry("chi");
    fr.psi = carry("psi");
    return fr;
}

struct MapGeometry {
    ScalarField J;        // det F on the label grid
    std::vector<Mat3> A;  // cofactor of F, so A F^T = J I pointwise
};

inline MapGeometry map_geometry(const LagrangianMap& m) {
    require(m.size() == m.lgrid.size(), "map_geometry: tracer cloud has no label grid");
    MapGeometry g;
    g.J = ScalarField(m.lgrid);
    g.A.resize(m.size());
    for (std::size_t n = 0; n < m.size(); ++n) {
        g.J.v[n] = det(m.F[n]);
        g.A[n] = cofactor(m.F[n]);
    }
    return g;
}

// Piola identity residual r_k = sum_j d A_kj / d x0^j; zero in the continuum
// for any smooth map, O(h^order) discretely.
inline VectorField piola_residual(const LagrangianMap& m, const MapGeometry& geo) {
    const Grid& lg = m.lgrid;
    VectorField r(lg);
    for (int k = 0; k < 3; ++k) {
        ScalarField acc(lg);
        for (int j = 0; j < 3; ++j) {
            ScalarField akj(lg);
            for (std::size_t n = 0; n < m.size(); ++n) akj.v[n] = geo.A[n](k, j);
            ScalarField d = derivative(akj, j);
            for (std::size_t n = 0; n < m.size(); ++n) acc.v[n] += d.v[n];
        }
        r.comp(k) = std::move(acc.v);
    }
    return r;
}

// Eulerian fields evaluated at the tracer positions.
struct SampledState {
    std::vector<double> rho, S, Phi;
    std::vector<double> ux, uy, uz;
    std::vector<double> Bx, By, Bz;
};

inline SampledState sample_state_at(const MhdState& s, const Interpolator& itp) {
    SampledState out;
    out.rho = itp.sample(s.rho);
    out.S = itp.sample(s.S);
    itp.sample(s.u, out.ux, out.uy, out.uz);
    itp.sample(s.B, out.Bx, out.By, out.Bz);
    if (s.Phi)
        out.Phi = itp.sample(*s.Phi);
    else
        out.Phi.assign(itp.point_count(), 0.0);
    return out;
}

// Map-side reconstructions: rho = rho0/J, S = S0, B = F B0 / J, plus the
// Lagrangian density in both its Eulerian (ell) and label (ell0) factorings.
// ell0 and J*ell are the same expression factored differently, so they agree
// to round-off; that agreement is a consistency check, not a tautology of
// shared code.
struct MapReconstruction {
    ScalarField J;
    ScalarField rho, S, p;
    VectorField B;
    ScalarField ell, ell0;
};

inline MapReconstruction map_reconstruct(const LagrangianMap& m, const LabelData& ld,
                                         const Eos& eos, const SampledState& at) {
    require(m.size() == m.lgrid.size(), "map_reconstruct: tracer cloud has no label grid");
    const Grid& lg = m.lgrid;
    MapReconstruction r;
    r.J = ScalarField(lg);
    r.rho = ScalarField(lg);
    r.S = ScalarField(lg, ld.S0.v);
    r.p = ScalarField(lg);
    r.B = VectorField(lg);
    r.ell = ScalarField(lg);
    r.ell0 = ScalarField(lg);
    for (std::size_t n = 0; n < m.size(); ++n) {
        double J = det(m.F[n]);
        require(J > 0.0, "map_reconstruct: nonpositive Jacobian determinant");
        r.J.v[n] = J;
        double rho = ld.rho0.v[n] / J;
        r.rho.v[n] = rho;
        Vec3 B = matvec(m.F[n], ld.B0.at(n)) / J;
        r.B.set(n, B);
        Thermo th = eos.eval(rho, ld.S0.v[n]);
        r.p.v[n] = th.p;
        double u2 = at.ux[n] * at.ux[n] + at.uy[n] * at.uy[n] + at.uz[n] * at.uz[n];
        double b2 = dot(B, B);
        r.ell.v[n] = 0.5 * rho * u2 - th.eps - 0.5 * b2 / eos.mu0 - rho * at.Phi[n];
        // label factoring: multiply each term by J before combining
        r.ell0.v[n] = 0.5 * ld.rho0.v[n] * u2 - J * th.eps - 0.5 * (J * b2) / eos.mu0 -
                      ld.rho0.v[n] * at.Phi[n];
    }
    return r;
}

// Residual of the label-space momentum balance
//   E_i = -[ rho0 (dv^i/dt + dPhi/dx^i) + d/dx0^j { A_kj P_ik } ],
//   P_ik = (p + |B|^2/(2 mu0)) delta_ik - B^i B^k / mu0,
// with dv/dt the Eulerian material acceleration (du/dt + u.grad u) sampled at
// the tracers and p, B taken from the map reconstruction. Vanishes on-shell at
// the label stencil order.
inline VectorField euler_lagrange_residual(const LagrangianMap& m, const LabelData& ld,
                                           const MhdState& s, const Tendency& tend,
                                           const Eos& eos) {
    require(m.size() == m.lgrid.size(), "euler_lagrange_residual: tracer cloud has no label grid");
    const Grid& lg = m.lgrid;
    Interpolator itp = map_interpolator(m, s.grid);
    SampledState at = sample_state_at(s, itp);
    MapReconstruction rec = map_reconstruct(m, ld, eos, at);
    MapGeometry geo = map_geometry(m);

    // material acceleration du/dt + (u.grad)u on the Eulerian grid, sampled
    VectorField acc(s.grid);
    {
        VectorField adv = advect(s.u, s.u);
        for (std::size_t n = 0; n < acc.size(); ++n) {
            acc.x[n] = tend.u.x[n] + adv.x[n];
            acc.y[n] = tend.u.y[n] + adv.y[n];
            acc.z[n] = tend.u.z[n] + adv.z[n];
        }
    }
    std::vector<double> ax, ay, az;
    itp.sample(acc, ax, ay, az);

    std::vector<double> gpx(m.size(), 0.0), gpy(m.size(), 0.0), gpz(m.size(), 0.0);
    if (s.Phi) {
        VectorField gphi = gradient(*s.Phi);
        itp.sample(gphi, gpx, gpy, gpz);
    }

    VectorField E(lg);
    for (int i = 0; i < 3; ++i) {
        // stress contraction M_ij = sum_k A_kj P_ik, then sum_j D_j M_ij
        ScalarField divM(lg);
        for (int j = 0; j < 3; ++j) {
            ScalarField Mij(lg);
            for (std::size_t n = 0; n < m.size(); ++n) {
                Vec3 B = rec.B.at(n);
                double ptot = rec.p.v[n] + 0.5 * dot(B, B) / eos.mu0;
                double s_ = 0.0;
                for (int k = 0; k < 3; ++k) {
                    double Pik = (i == k ? ptot : 0.0) - B[i] * B[k] / eos.mu0;
                    s_ += geo.A[n](k, j) * Pik;
                }
                Mij.v[n] = s_;
            }
            ScalarField d = derivative(Mij, j);
            for (std::size_t n = 0; n < m.size(); ++n) divM.v[n] += d.v[n];
        }
        const double* ac = i == 0 ? ax.data() : (i == 1 ? ay.data() : az.data());
        const double* gp = i == 0 ? gpx.data() : (i == 1 ? gpy.data() : gpz.data());
        std::vector<double>& out = E.comp(i);
        for (std::size_t n = 0; n < m.size(); ++n)
            out[n] = -(ld.rho0.v[n] * (ac[n] + gp[n]) + divM.v[n]);
    }
    return E;
}

}  // namespace mhdinv
