#if defined(SONOTHERM_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

#include "sonotherm/bessel.hpp"
#include "sonotherm/kernels.hpp"

namespace sonotherm::kernels {

std::complex<double> pressure_sum_avx2(const SourceArrays& src, double x, double y, double z) {
    const std::size_t n = src.size();
    const std::size_t n4 = n & ~std::size_t{3};

    const __m256d vx = _mm256_set1_pd(x);
    const __m256d vy = _mm256_set1_pd(y);
    const __m256d vz = _mm256_set1_pd(z);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d vk = _mm256_set1_pd(src.wavenumber);

    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();

    alignas(32) double d_lane[4], s_lane[4], arg_lane[4], mag_lane[4];

    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d dx = _mm256_sub_pd(vx, _mm256_loadu_pd(&src.px[i]));
        const __m256d dy = _mm256_sub_pd(vy, _mm256_loadu_pd(&src.py[i]));
        const __m256d dz = _mm256_sub_pd(vz, _mm256_loadu_pd(&src.pz[i]));
        const __m256d d2 = _mm256_fmadd_pd(
            dx, dx, _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dz, dz)));
        const __m256d d = _mm256_sqrt_pd(d2);

        const __m256d dot = _mm256_fmadd_pd(
            dx, _mm256_loadu_pd(&src.nx[i]),
            _mm256_fmadd_pd(dy, _mm256_loadu_pd(&src.ny[i]),
                            _mm256_mul_pd(dz, _mm256_loadu_pd(&src.nz[i]))));
        const __m256d sin2 = _mm256_max_pd(
            zero, _mm256_sub_pd(one, _mm256_div_pd(_mm256_mul_pd(dot, dot), d2)));
        const __m256d sin_t = _mm256_sqrt_pd(sin2);

        const __m256d arg =
            _mm256_fmadd_pd(vk, d, _mm256_loadu_pd(&src.phase[i]));
        const __m256d amp_over_d = _mm256_div_pd(_mm256_loadu_pd(&src.amplitude[i]), d);

        _mm256_store_pd(d_lane, amp_over_d);
        _mm256_store_pd(s_lane, sin_t);
        _mm256_store_pd(arg_lane, arg);
        // jinc and sincos have no AVX2 forms; finish the four lanes scalar.
        for (int l = 0; l < 4; ++l)
            mag_lane[l] = d_lane[l] * jinc(src.ka * s_lane[l]);
        alignas(32) double re_lane[4], im_lane[4];
        for (int l = 0; l < 4; ++l) {
            re_lane[l] = mag_lane[l] * std::cos(arg_lane[l]);
            im_lane[l] = mag_lane[l] * std::sin(arg_lane[l]);
        }
        acc_re = _mm256_add_pd(acc_re, _mm256_load_pd(re_lane));
        acc_im = _mm256_add_pd(acc_im, _mm256_load_pd(im_lane));
    }

    alignas(32) double re4[4], im4[4];
    _mm256_store_pd(re4, acc_re);
    _mm256_store_pd(im4, acc_im);
    double re = (re4[0] + re4[1]) + (re4[2] + re4[3]);
    double im = (im4[0] + im4[1]) + (im4[2] + im4[3]);

    for (std::size_t i = n4; i < n; ++i) {
        const double dx = x - src.px[i];
        const double dy = y - src.py[i];
        const double dz = z - src.pz[i];
        const double d2 = dx * dx + dy * dy + dz * dz;
        const double d = std::sqrt(d2);
        const double dot = dx * src.nx[i] + dy * src.ny[i] + dz * src.nz[i];
        const double sin2 = std::max(0.0, 1.0 - (dot * dot) / d2);
        const double mag = src.amplitude[i] / d * jinc(src.ka * std::sqrt(sin2));
        const double arg = src.wavenumber * d + src.phase[i];
        re += mag * std::cos(arg);
        im += mag * std::sin(arg);
    }
    return {re, im};
}

void heat_row_avx2(std::span<const double> t, std::span<const double> up,
                   std::span<const double> down, std::span<const double> coeff_w,
                   std::span<const double> coeff_e, std::span<const double> coeff_n,
                   std::span<const double> coeff_s, std::span<const double> src,
                   std::span<double> out) {
    const std::size_t n = out.size();
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d c = _mm256_loadu_pd(&t[i + 1]);
        __m256d acc = _mm256_add_pd(c, _mm256_loadu_pd(&src[i]));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(&coeff_w[i]),
                              _mm256_sub_pd(_mm256_loadu_pd(&t[i]), c), acc);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(&coeff_e[i]),
                              _mm256_sub_pd(_mm256_loadu_pd(&t[i + 2]), c), acc);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(&coeff_n[i]),
                              _mm256_sub_pd(_mm256_loadu_pd(&up[i]), c), acc);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(&coeff_s[i]),
                              _mm256_sub_pd(_mm256_loadu_pd(&down[i]), c), acc);
        _mm256_storeu_pd(&out[i], acc);
    }
    for (std::size_t i = n4; i < n; ++i) {
        const double c = t[i + 1];
        out[i] = c + coeff_w[i] * (t[i] - c) + coeff_e[i] * (t[i + 2] - c) +
                 coeff_n[i] * (up[i] - c) + coeff_s[i] * (down[i] - c) + src[i];
    }
}

} // namespace sonotherm::kernels

#endif // SONOTHERM_HAVE_AVX2
