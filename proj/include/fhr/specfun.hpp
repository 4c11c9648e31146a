#pragma once

namespace fhr::specfun {

/// Bessel function of the first kind, order 0.
/// Throws DomainError for non-finite input.
double bessel_j0(double z);

/// Bessel function of the first kind, order 1.
/// Throws DomainError for non-finite input.
double bessel_j1(double z);

/// J1(z)/z, continuous at z = 0 where it equals 1/2.
/// Used wherever the kernels contain sqrt(c/(t-y)) J1(2 sqrt(c y (t-y))), which is
/// bounded although each factor alone is singular at y = t.
double bessel_j1_over_z(double z);

}  // namespace fhr::specfun
