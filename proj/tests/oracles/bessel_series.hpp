#pragma once

// Slow reference Bessel functions: the defining power series summed in quad precision with
// Kahan compensation until the terms underflow relative to the sum.

#include <quadmath.h>

#include <cmath>

namespace oracle {

inline double bessel_series(double z, int order) {
    const __float128 q = static_cast<__float128>(z) * z / 4;
    __float128 term = 1;
    for (int k = 1; k <= order; ++k) term = term * (static_cast<__float128>(z) / 2) / k;
    __float128 sum = term;
    __float128 comp = 0;
    for (int k = 1; k < 400; ++k) {
        term = -term * q / (static_cast<__float128>(k) * (k + order));
        const __float128 y = term - comp;
        const __float128 s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        if (k > q && fabsq(term) < 1e-40Q * (fabsq(sum) + 1e-300Q)) break;
    }
    return static_cast<double>(sum);
}

inline double j0(double z) { return bessel_series(std::abs(z), 0); }
inline double j1(double z) { return z < 0 ? -bessel_series(-z, 1) : bessel_series(z, 1); }

}  // namespace oracle
