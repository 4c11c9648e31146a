#include "fhr/specfun.hpp"

#include <cmath>
#include <numbers>

#include "fhr/errors.hpp"

namespace fhr::specfun {

namespace {

// Below kSeriesLimit the alternating power series loses at most a few ulps to
// cancellation. Between kSeriesLimit and kAsymptoticLimit we use Miller's backward
// recurrence normalised by J0 + 2 sum J_2k = 1; beyond, the Hankel expansion is
// accurate to below 1e-17 relative without approaching its optimal truncation.
constexpr double kSeriesLimit = 4.0;
constexpr double kAsymptoticLimit = 25.0;

void check_finite(double z) {
    if (!std::isfinite(z)) throw DomainError("Bessel function argument must be finite");
}

// sum_k (-q)^k / (k! (k+order)!) with q = z^2/4.
double power_series(double z, int order) {
    const double q = 0.25 * z * z;
    double term = 1.0;
    for (int k = 1; k <= order; ++k) term /= k;
    double sum = term;
    for (int k = 1; k < 60; ++k) {
        term *= -q / (static_cast<double>(k) * (k + order));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

struct Pair {
    double j0;
    double j1;
};

Pair miller(double z) {
    // Start well above the turning point so J_N(z) is negligible.
    int n_start = static_cast<int>(z) + 40;
    if (n_start % 2 != 0) ++n_start;

    double next = 0.0;      // J_{n+1}
    double current = 1e-30;  // J_n
    double norm = 0.0;
    double j1 = 0.0;
    for (int n = n_start; n > 0; --n) {
        const double prev = (2.0 * n / z) * current - next;
        next = current;
        current = prev;
        // current now holds J_{n-1}
        if (n - 1 == 1) j1 = current;
        if ((n - 1) % 2 == 0 && n - 1 > 0) norm += 2.0 * current;
        if (std::abs(current) > 1e250) {
            current *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            j1 *= 1e-250;
        }
    }
    norm += current;
    return {current / norm, j1 / norm};
}

// Hankel asymptotic expansion: J_nu(z) = sqrt(2/(pi z)) (P cos chi - Q sin chi).
double hankel(double z, int order) {
    const double mu = 4.0 * order * order;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    for (int k = 1; k < 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * z);
        const int sign = ((k / 2) % 2 == 0) ? 1 : -1;
        if (k % 2 == 1) {
            q += sign * term;
        } else {
            p += sign * term;
        }
        if (std::abs(term) < 1e-18) break;
    }
    const double s = std::sin(z);
    const double c = std::cos(z);
    constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    double cos_chi;
    double sin_chi;
    if (order == 0) {
        cos_chi = (c + s) * inv_sqrt2;
        sin_chi = (s - c) * inv_sqrt2;
    } else {
        cos_chi = (s - c) * inv_sqrt2;
        sin_chi = -(s + c) * inv_sqrt2;
    }
    return std::sqrt(2.0 / (std::numbers::pi * z)) * (p * cos_chi - q * sin_chi);
}

}  // namespace

double bessel_j0(double z) {
    check_finite(z);
    const double x = std::abs(z);
    if (x < kSeriesLimit) return power_series(x, 0);
    if (x < kAsymptoticLimit) return miller(x).j0;
    return hankel(x, 0);
}

double bessel_j1(double z) {
    check_finite(z);
    const double x = std::abs(z);
    double value;
    if (x < kSeriesLimit) {
        value = 0.5 * x * power_series(x, 1);
    } else if (x < kAsymptoticLimit) {
        value = miller(x).j1;
    } else {
        value = hankel(x, 1);
    }
    return z < 0.0 ? -value : value;
}

double bessel_j1_over_z(double z) {
    check_finite(z);
    const double x = std::abs(z);
    if (x < kSeriesLimit) return 0.5 * power_series(x, 1);
    return bessel_j1(x) / x;
}

}  // namespace fhr::specfun
