#pragma once

namespace sonotherm {

// Bessel function of the first kind, order 1. Power series below |x| = 8,
// rational/asymptotic approximation above. Absolute error <= 1e-8 on [0, 40].
double bessel_j1(double x);

// 2*J1(x)/x with the x -> 0 limit of 1. The circular-piston directivity is
// this evaluated at k*a*sin(theta).
double jinc(double x);

} // namespace sonotherm
