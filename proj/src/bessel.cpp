#include "sonotherm/bessel.hpp"

#include <cmath>

namespace sonotherm {

namespace {

// Power series J1(x) = (x/2) sum_m (-1)^m (x^2/4)^m / (m! (m+1)!),
// converges fast for |x| < 8.
double j1_series(double x) {
    const double q = 0.25 * x * x;
    double term = 0.5 * x;
    double sum = term;
    for (int m = 1; m < 40; ++m) {
        term *= -q / (static_cast<double>(m) * (m + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum))
            break;
    }
    return sum;
}

// Asymptotic form with rational corrections (Abramowitz & Stegun 9.4.6),
// valid for x >= 8.
double j1_asymptotic(double x) {
    const double y = 64.0 / (x * x);
    const double p1 = 1.0 +
                      y * (0.183105e-2 +
                           y * (-0.3516396496e-4 +
                                y * (0.2457520174e-5 + y * (-0.240337019e-6))));
    const double q1 = 0.04687499995 +
                      y * (-0.2002690873e-3 +
                           y * (0.8449199096e-5 +
                                y * (-0.88228987e-6 + y * 0.105787412e-6)));
    const double xx = x - 2.356194491; // 3 pi / 4
    return std::sqrt(0.636619772 / x) * (std::cos(xx) * p1 - std::sin(xx) * (8.0 / x) * q1);
}

} // namespace

double bessel_j1(double x) {
    const double ax = std::abs(x);
    const double v = ax < 8.0 ? j1_series(ax) : j1_asymptotic(ax);
    return x < 0.0 ? -v : v;
}

double jinc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-6) {
        // 2 J1(x)/x = 1 - x^2/8 + O(x^4)
        return 1.0 - 0.125 * x * x;
    }
    return 2.0 * bessel_j1(x) / x;
}

} // namespace sonotherm
