#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace sonotherm::kernels {

// Transducer data laid out as structure-of-arrays for the field kernel.
struct SourceArrays {
    std::span<const double> px, py, pz; // positions
    std::span<const double> nx, ny, nz; // unit normals
    std::span<const double> amplitude;  // Pa*m contribution per source
    std::span<const double> phase;      // emission phase, rad
    double wavenumber = 0.0;            // rad/m
    double ka = 0.0;                    // wavenumber * piston radius

    std::size_t size() const { return px.size(); }
};

// Coherent piston-source superposition at one point:
//   p = sum_i amp_i / d_i * D(theta_i) * exp(j (k d_i + phase_i))
// Summation order is the source order, fixed; results are deterministic
// for a given kernel variant.
using PressureSumFn = std::complex<double> (*)(const SourceArrays&, double x, double y, double z);

// One explicit axisymmetric heat-equation step for one z-row of cells.
// t carries one ghost cell at each end (length n+2); up/down/coeffs/src/out
// have length n. With c = t[i+1]:
//   out[i] = c + coeff_w[i]*(t[i]-c) + coeff_e[i]*(t[i+2]-c)
//          + coeff_n[i]*(up[i]-c) + coeff_s[i]*(down[i]-c) + src[i]
using HeatRowFn = void (*)(std::span<const double> t, std::span<const double> up,
                           std::span<const double> down, std::span<const double> coeff_w,
                           std::span<const double> coeff_e, std::span<const double> coeff_n,
                           std::span<const double> coeff_s, std::span<const double> src,
                           std::span<double> out);

std::complex<double> pressure_sum_scalar(const SourceArrays& src, double x, double y, double z);
void heat_row_scalar(std::span<const double> t, std::span<const double> up,
                     std::span<const double> down, std::span<const double> coeff_w,
                     std::span<const double> coeff_e, std::span<const double> coeff_n,
                     std::span<const double> coeff_s, std::span<const double> src,
                     std::span<double> out);

#if defined(SONOTHERM_HAVE_AVX2)
std::complex<double> pressure_sum_avx2(const SourceArrays& src, double x, double y, double z);
void heat_row_avx2(std::span<const double> t, std::span<const double> up,
                   std::span<const double> down, std::span<const double> coeff_w,
                   std::span<const double> coeff_e, std::span<const double> coeff_n,
                   std::span<const double> coeff_s, std::span<const double> src,
                   std::span<double> out);
#endif

struct Dispatch {
    PressureSumFn pressure_sum;
    HeatRowFn heat_row;
    std::string_view name; // "scalar" or "avx2"
};

// Best variant for the running CPU, chosen once at startup.
const Dispatch& dispatch();

// Force a specific variant (tests); returns false if unavailable.
bool select_variant(std::string_view name);

} // namespace sonotherm::kernels
