// Ideal-gas entropy closure: eps(rho, S) = rho^gamma exp((S - S_ref)/cv) / (gamma - 1).
// The first law then gives p = rho deps/drho - eps = (gamma - 1) eps and
// rho T = deps/dS, i.e. T = eps / (rho cv).
#pragma once

#include "core.hpp"
#include "field.hpp"

namespace mhdinv {

struct Thermo {
    double eps = 0.0;  // internal energy density (per volume)
    double p = 0.0;
    double T = 0.0;
    double h = 0.0;  // specific enthalpy (eps + p)/rho
};

struct Eos {
    double gamma = 5.0 / 3.0;
    double cv = 1.0;
    double s_ref = 0.0;
    double mu0 = 1.0;

    Thermo eval(double rho, double S) const {
        if (!(rho > 0.0))
            throw std::domain_error("Eos: nonpositive density " + std::to_string(rho));
        Thermo t;
        t.p = std::pow(rho, gamma) * std::exp((S - s_ref) / cv);
        t.eps = t.p / (gamma - 1.0);
        t.T = t.eps / (rho * cv);
        t.h = (t.eps + t.p) / rho;
        return t;
    }

    double pressure(double rho, double S) const { return eval(rho, S).p; }

    // entropy that yields pressure p at density rho
    double entropy_for_pressure(double rho, double p) const {
        require(rho > 0.0 && p > 0.0, "entropy_for_pressure: need rho > 0 and p > 0");
        return s_ref + cv * std::log(p / std::pow(rho, gamma));
    }

    // sound speed squared gamma p / rho
    double cs2(double rho, double S) const { return gamma * pressure(rho, S) / rho; }
};

inline ScalarField pressure_field(const Eos& eos, const ScalarField& rho, const ScalarField& S) {
    ScalarField p(rho.grid);
    for (std::size_t n = 0; n < p.size(); ++n) p.v[n] = eos.pressure(rho.v[n], S.v[n]);
    return p;
}

}  // namespace mhdinv
