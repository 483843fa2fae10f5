#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sonotherm/bessel.hpp"

using sonotherm::bessel_j1;
using sonotherm::jinc;

namespace {

// Integral representation J1(x) = (1/pi) int_0^pi cos(tau - x sin tau) dtau,
// evaluated by composite Simpson. Independent of the series/asymptotic path.
double j1_quadrature(double x) {
    constexpr int n = 4000; // even
    const double h = std::numbers::pi / n;
    double sum = std::cos(-0.0) + std::cos(std::numbers::pi - x * std::sin(std::numbers::pi));
    for (int i = 1; i < n; ++i) {
        const double tau = i * h;
        sum += (i % 2 ? 4.0 : 2.0) * std::cos(tau - x * std::sin(tau));
    }
    return sum * h / (3.0 * std::numbers::pi);
}

} // namespace

TEST_CASE("matches the integral oracle on [0, 40]") {
    for (double x = 0.0; x <= 40.0; x += 0.0625)
        CHECK(std::abs(bessel_j1(x) - j1_quadrature(x)) <= 1e-8);
}

TEST_CASE("odd symmetry") {
    for (double x : {0.3, 1.7, 5.0, 12.5, 33.0})
        CHECK(bessel_j1(-x) == doctest::Approx(-bessel_j1(x)).epsilon(1e-15));
}

TEST_CASE("jinc limit and continuity at zero") {
    CHECK(jinc(0.0) == 1.0);
    CHECK(jinc(1e-7) == doctest::Approx(1.0).epsilon(1e-12));
    // both branches agree around the small-argument switch
    CHECK(jinc(1e-6 * 0.999) == doctest::Approx(jinc(1e-6 * 1.001)).epsilon(1e-10));
}

TEST_CASE("jinc matches 2 J1(x)/x") {
    for (double x : {0.01, 0.5, 2.0, 3.8317, 10.0})
        CHECK(jinc(x) == doctest::Approx(2.0 * j1_quadrature(x) / x).epsilon(1e-7));
}
