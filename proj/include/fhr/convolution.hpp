#pragma once

#include <span>
#include <vector>

#include "fhr/grid.hpp"
#include "fhr/kernel_table.hpp"

namespace fhr::conv {

/// Trapezoidal time convolution (f * g)(t_n) = int_0^t_n f(t_n - tau) g(tau) dtau, per node.
SampledField conv_time(const SampledField& f, const SampledField& g);

/// Same for scalar signals sampled at t_n = n dt.
std::vector<double> conv_time(std::span<const double> f, std::span<const double> g, double dt);

/// Outcome of the window-boundary decay check.
struct TruncationReport {
    bool truncated = false;
    double boundary_value = 0.0;
    double estimate = 0.0;  // rough bound on the mass lost outside the window
};

/// Inspect the boundary values of a profile; truncated when either end exceeds tol.
TruncationReport check_decay(std::span<const double> f, std::span<const double> other, double dx,
                             double tol = 1e-10);

/// Trapezoidal space convolution (f star g)(x_i) = int f(xi) g(x_i - xi) dxi with zero
/// padding outside the window. Needs a node at x = 0 so that x_i - x_j lands on the grid.
/// Fills *report (if given) with the decay check of f and g.
Profile conv_space(std::span<const double> f, std::span<const double> g, const Grid1D& grid,
                   TruncationReport* report = nullptr, double decay_tol = 1e-10);

/// Row-wise conv_space of a profile against every time level of a field.
SampledField conv_space_rows(std::span<const double> f, const SampledField& g);

/// K(., t_n) star f through the hat weights of the table; row 0 is alpha f.
SampledField conv_space_kernel(const KernelTable& K, std::span<const double> f);

/// Space-time convolution (K (x) F)(x, t) = int_0^t dtau int K(x - xi, t - tau) F(xi, tau) dxi:
/// hat weights in space and the trapezoidal rule over the lag t - tau.
SampledField conv_spacetime(const KernelTable& K, const SampledField& F);

/// Same product for separable data F(x, t) = f(x) g(t); O(nt nx q + nt^2 nx).
SampledField conv_spacetime_separable(const KernelTable& K, std::span<const double> f, std::span<const double> g);

/// int_0^t_n K(x_i, tau) g(t_n - tau) dtau for a signal g sampled at t_n and interpolated
/// linearly, through the time moments of the table.
SampledField conv_time_kernel(const KernelTable& K, std::span<const double> g);

/// [int_0^t_n K(., tau) g(t_n - tau) dtau] star f through the hat-weight time moments,
/// so the spatial product stays exact for piecewise-linear f at every lag.
SampledField conv_time_kernel_space(const KernelTable& K, std::span<const double> g, std::span<const double> f);

/// Kernel mass int K(xi, t_n) dxi at every time level.
std::vector<double> kernel_mass(const KernelTable& K);

/// Cumulative trapezoid int_0^t_n s(tau) dtau of a signal.
std::vector<double> cumulative_trapezoid(std::span<const double> s, double dt);

}  // namespace fhr::conv
