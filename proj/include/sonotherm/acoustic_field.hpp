#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "sonotherm/array_model.hpp"
#include "sonotherm/vec3.hpp"

namespace sonotherm {

struct Medium {
    double density = 1.18;      // kg/m^3
    double sound_speed = 346.0; // m/s

    double impedance() const { return density * sound_speed; }
};

// Complex pressure amplitude sampled on a plane patch.
struct FieldGrid {
    Vec3 origin;          // sample (0,0)
    Vec3 u_axis, v_axis;  // unit, orthogonal
    int nu = 0, nv = 0;
    double spacing_m = 0.0;
    std::vector<std::complex<double>> values; // row-major, nu*nv, Pa

    std::complex<double>& at(int iu, int iv) { return values[static_cast<std::size_t>(iu) * nv + iv]; }
    const std::complex<double>& at(int iu, int iv) const {
        return values[static_cast<std::size_t>(iu) * nv + iv];
    }
    Vec3 point(int iu, int iv) const {
        return origin + u_axis * (iu * spacing_m) + v_axis * (iv * spacing_m);
    }
};

struct GridSpec {
    Vec3 center;        // grid midpoint (typically the focus)
    Vec3 u_axis{1, 0, 0};
    Vec3 v_axis{0, 1, 0};
    int nu = 41, nv = 41;
    double spacing_m = 0.001;
};

// Complex pressure of the driven layout at a point. Rejects points within
// one wavelength of any transducer (far-field piston model).
std::complex<double> pressure_at(const ArrayLayout& layout, const DriveSolution& drive,
                                 const Vec3& point);

FieldGrid field_on_plane(const ArrayLayout& layout, const DriveSolution& drive,
                         const GridSpec& spec);

// Plane-progressive-wave intensity, |p|^2 / (2 rho c). |p| is peak amplitude.
double intensity(const std::complex<double>& p_amplitude, const Medium& medium);

// Time-averaged radiation pressure on a perfectly absorbing surface,
// |p|^2 / (2 rho c^2) = intensity / c.
double radiation_pressure(const std::complex<double>& p_amplitude, const Medium& medium);

// CSV: header lines with origin/axes/spacing, then |p| rows (row-major).
void write_field_csv(const FieldGrid& grid, std::ostream& os);
// Binary PGM of |p| normalized to the grid maximum.
void write_field_pgm(const FieldGrid& grid, std::ostream& os);

} // namespace sonotherm
