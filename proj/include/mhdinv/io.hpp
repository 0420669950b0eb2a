// Output writers: binary field dumps (one ASCII header line, then the
// x-fastest float64 raster in native little-endian order) and the diagnostics
// CSV. All numeric text uses %.17g so round-trips are exact and outputs are
// byte-stable across runs.
#pragma once

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "field.hpp"
#include "rhs.hpp"

namespace mhdinv {

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_field_dump(const std::string& path, const std::string& name,
                             const ScalarField& f, double t) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "write_field_dump: cannot open " + path);
    const Grid& g = f.grid;
    out << name << ' ' << g.nx << ' ' << g.ny << ' ' << g.nz << ' ' << format_g17(g.Lx) << ' '
        << format_g17(g.Ly) << ' ' << format_g17(g.Lz) << ' ' << format_g17(t) << '\n';
    out.write(reinterpret_cast<const char*>(f.v.data()),
              static_cast<std::streamsize>(f.v.size() * sizeof(double)));
    require(out.good(), "write_field_dump: write failed for " + path);
}

inline ScalarField read_field_dump(const std::string& path, std::string* name_out = nullptr,
                                   double* t_out = nullptr) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "read_field_dump: cannot open " + path);
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::string name;
    int nx, ny, nz;
    double Lx, Ly, Lz, t;
    require(static_cast<bool>(hs >> name >> nx >> ny >> nz >> Lx >> Ly >> Lz >> t),
            "read_field_dump: bad header in " + path);
    Grid g = make_grid(nx, ny, nz, Lx, Ly, Lz, 2);
    ScalarField f(g);
    in.read(reinterpret_cast<char*>(f.v.data()),
            static_cast<std::streamsize>(f.v.size() * sizeof(double)));
    require(in.gcount() == static_cast<std::streamsize>(f.v.size() * sizeof(double)),
            "read_field_dump: truncated raster in " + path);
    if (name_out) *name_out = name;
    if (t_out) *t_out = t;
    return f;
}

inline void write_vector_dump(const std::string& path_base, const std::string& name,
                              const VectorField& f, double t) {
    const char* suffix[3] = {"_x", "_y", "_z"};
    for (int c = 0; c < 3; ++c) {
        ScalarField comp(f.grid, f.comp(c));
        write_field_dump(path_base + suffix[c] + ".f64", name + suffix[c], comp, t);
    }
}

inline std::string diagnostics_csv_string(const std::vector<Diagnostics>& d) {
    std::ostringstream out;
    out << "t,total_mass,total_energy,cross_helicity,divB_linf\n";
    for (const Diagnostics& row : d)
        out << format_g17(row.t) << ',' << format_g17(row.total_mass) << ','
            << format_g17(row.total_energy) << ',' << format_g17(row.cross_helicity) << ','
            << format_g17(row.divB_linf) << '\n';
    return out.str();
}

inline void write_diagnostics_csv(const std::string& path, const std::vector<Diagnostics>& d) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "write_diagnostics_csv: cannot open " + path);
    out << diagnostics_csv_string(d);
    require(out.good(), "write_diagnostics_csv: write failed for " + path);
}

inline std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "read_file_bytes: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "write_file_bytes: cannot open " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    require(out.good(), "write_file_bytes: write failed for " + path);
}

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

}  // namespace mhdinv
