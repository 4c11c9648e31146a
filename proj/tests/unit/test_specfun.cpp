#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fhr/errors.hpp"
#include "fhr/specfun.hpp"
#include "oracles/bessel_series.hpp"

using fhr::specfun::bessel_j0;
using fhr::specfun::bessel_j1;
using fhr::specfun::bessel_j1_over_z;

namespace {

double rel_err(double got, double want) {
    const double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

}  // namespace

TEST(Specfun, Examples) {
    EXPECT_EQ(bessel_j0(0.0), 1.0);
    EXPECT_EQ(bessel_j1(0.0), 0.0);
    EXPECT_LT(std::abs(bessel_j0(2.404825557695773)), 1e-12);
    EXPECT_LT(std::abs(bessel_j1(3.8317059702075123)), 1e-12);
    EXPECT_NEAR(bessel_j0(5.0), -0.17759677131434, 1e-13);
    EXPECT_NEAR(bessel_j1(2.0), 0.576724807756873, 1e-14);
}

TEST(Specfun, AgainstSeriesOracle) {
    // Away from zeros the relative error must stay within 1e-13; near zeros the absolute
    // error is bounded by the same amount times the local function scale.
    double worst0 = 0.0;
    double worst1 = 0.0;
    for (int i = 0; i <= 3000; ++i) {
        const double z = 30.0 * i / 3000.0 + 1e-3;
        const double r0 = oracle::j0(z);
        const double r1 = oracle::j1(z);
        const double env = 1.0 / std::sqrt(1.0 + z);
        const double e0 = std::abs(bessel_j0(z) - r0) / std::max(std::abs(r0), env);
        const double e1 = std::abs(bessel_j1(z) - r1) / std::max(std::abs(r1), env);
        worst0 = std::max(worst0, e0);
        worst1 = std::max(worst1, e1);
    }
    EXPECT_LT(worst0, 1e-13);
    EXPECT_LT(worst1, 1e-13);
}

TEST(Specfun, RelativeAccuracyAwayFromZeros) {
    for (double z : {0.1, 0.7, 1.3, 3.2, 3.99, 4.01, 6.5, 7.9, 8.1, 11.0, 17.3, 24.9, 25.1, 29.5}) {
        EXPECT_LT(rel_err(bessel_j0(z), oracle::j0(z)), 1e-13) << z;
        EXPECT_LT(rel_err(bessel_j1(z), oracle::j1(z)), 1e-13) << z;
    }
}

TEST(Specfun, Symmetry) {
    for (double z : {0.3, 2.5, 7.0, 19.0, 44.0}) {
        EXPECT_EQ(bessel_j0(-z), bessel_j0(z));
        EXPECT_EQ(bessel_j1(-z), -bessel_j1(z));
    }
}

TEST(Specfun, BoundedOnWideGrid) {
    for (int i = 0; i <= 10000; ++i) {
        const double z = 100.0 * i / 10000.0;
        EXPECT_LE(std::abs(bessel_j0(z)), 1.0);
        EXPECT_LE(std::abs(bessel_j1(z)), 1.0);
    }
}

TEST(Specfun, DerivativeRecurrence) {
    const double h = 1e-5;
    double worst = 0.0;
    for (int i = 0; i <= 500; ++i) {
        const double z = 0.1 + (50.0 - 0.1) * i / 500.0;
        const double deriv = (bessel_j1(z + h) - bessel_j1(z - h)) / (2 * h);
        worst = std::max(worst, std::abs(deriv - (bessel_j0(z) - bessel_j1(z) / z)));
    }
    EXPECT_LT(worst, 1e-10);
}

TEST(Specfun, AbsoluteAccuracyBeyondThirty) {
    // Past the oracle's reach: Wronskian-type identity J0^2 + J1^2 ~ 2/(pi z) is too loose, so
    // check the recurrence J2 = (2/z) J1 - J0 against J0'' = -J0 + J1/z consistency via
    // second differences.
    const double h = 1e-3;
    for (double z : {31.0, 40.0, 55.5, 80.0, 120.0}) {
        const double second = (bessel_j0(z + h) - 2 * bessel_j0(z) + bessel_j0(z - h)) / (h * h);
        EXPECT_NEAR(second, -bessel_j0(z) + bessel_j1(z) / z, 1e-6) << z;
    }
}

TEST(Specfun, J1OverZ) {
    EXPECT_EQ(bessel_j1_over_z(0.0), 0.5);
    for (double z : {1e-8, 1e-3, 0.5, 3.0, 9.0, 29.0}) {
        EXPECT_LT(rel_err(bessel_j1_over_z(z), oracle::j1(z) / z), 1e-13) << z;
    }
    EXPECT_DOUBLE_EQ(bessel_j1_over_z(40.0), bessel_j1(40.0) / 40.0);
}

TEST(Specfun, RejectsNonFinite) {
    EXPECT_THROW(bessel_j0(std::numeric_limits<double>::quiet_NaN()), fhr::DomainError);
    EXPECT_THROW(bessel_j1(std::numeric_limits<double>::infinity()), fhr::DomainError);
}
