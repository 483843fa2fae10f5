#include "sonotherm/kernels.hpp"

#include <cmath>

#include "sonotherm/bessel.hpp"

namespace sonotherm::kernels {

std::complex<double> pressure_sum_scalar(const SourceArrays& src, double x, double y, double z) {
    double re = 0.0, im = 0.0;
    const std::size_t n = src.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x - src.px[i];
        const double dy = y - src.py[i];
        const double dz = z - src.pz[i];
        const double d2 = dx * dx + dy * dy + dz * dz;
        const double d = std::sqrt(d2);
        // sin(theta) from |r x n| / |r| with unit normal
        const double dot = dx * src.nx[i] + dy * src.ny[i] + dz * src.nz[i];
        const double sin2 = std::max(0.0, 1.0 - (dot * dot) / d2);
        const double dir = jinc(src.ka * std::sqrt(sin2));
        const double mag = src.amplitude[i] / d * dir;
        const double arg = src.wavenumber * d + src.phase[i];
        re += mag * std::cos(arg);
        im += mag * std::sin(arg);
    }
    return {re, im};
}

void heat_row_scalar(std::span<const double> t, std::span<const double> up,
                     std::span<const double> down, std::span<const double> coeff_w,
                     std::span<const double> coeff_e, std::span<const double> coeff_n,
                     std::span<const double> coeff_s, std::span<const double> src,
                     std::span<double> out) {
    const std::size_t n = out.size();
    // t is padded with one ghost cell at each end; t[i+1] is the cell itself.
    for (std::size_t i = 0; i < n; ++i) {
        const double c = t[i + 1];
        out[i] = c + coeff_w[i] * (t[i] - c) + coeff_e[i] * (t[i + 2] - c) +
                 coeff_n[i] * (up[i] - c) + coeff_s[i] * (down[i] - c) + src[i];
    }
}

} // namespace sonotherm::kernels
