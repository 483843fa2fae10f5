#pragma once

#include <vector>

#include "sonotherm/modulation.hpp"
#include "sonotherm/vec3.hpp"

namespace sonotherm {

struct Transducer {
    Vec3 position;       // m
    Vec3 normal;         // unit vector
    double radius;        // piston radius, m
    double ref_amplitude; // Pa at 1 m on axis
};

struct ArrayLayout {
    std::vector<Transducer> transducers;
    double frequency_hz = 40000.0;
    double sound_speed = 346.0;   // m/s
    double air_density = 1.18;    // kg/m^3

    double wavelength() const { return sound_speed / frequency_hz; }
    double wavenumber() const;
};

// Per-transducer emission phases plus a global amplitude scale. The field
// seen at distance d from transducer i carries phase k*d + phases[i].
struct DriveSolution {
    std::vector<double> phases;  // rad, each in [0, 2pi)
    double base_amplitude = 1.0; // fraction of ref_amplitude, [0,1]
    ExposureMode mode;
};

struct ArrayBuildConfig {
    int rows = 15;
    int cols = 17;
    double pitch_m = 0.010;
    double transducer_radius_m = 0.005;
    double ref_amplitude_pa = 6.0;       // Pa at 1 m on axis, full drive
    int corner_trim = 6;                  // grid positions removed per array
    int num_arrays = 2;
    double array_offset_x_m = 0.085;      // arrays centered at +/- this x
    double frequency_hz = 40000.0;
    double sound_speed = 346.0;
    double air_density = 1.18;
};

// Builds the dual array: each array is a rows x cols grid at the given pitch
// with corner_trim positions removed symmetrically (4 corners plus the two
// ends of the central row for the default trim of 6), all normals +z.
ArrayLayout build_dual_array(const ArrayBuildConfig& config);

// Emission phases that make all arrivals cophasal at the focus:
// phases[i] = (-k * |focal_point - position_i|) mod 2pi.
DriveSolution focus_phases(const ArrayLayout& layout, const Vec3& focal_point);

} // namespace sonotherm
