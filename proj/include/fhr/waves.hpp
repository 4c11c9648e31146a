#pragma once

#include <span>
#include <vector>

#include "fhr/grid.hpp"
#include "fhr/params.hpp"
#include "fhr/solver_fd.hpp"

namespace fhr::waves {

/// Traveling-wave setup for the modified system with the extra k u^2 term, u = u(x - C t).
/// Requires eps beta = delta d, k != 0, C != 0. p.a, p.c, p.h are not inputs: a and the
/// combination eps c - delta h come out of the constraint system.
struct WaveParams {
    ModelParams p;
    double k = 0.01;
    double C = 1.0;
    double z0 = 0.0;
    double sign_A = 1.0;  // A = sign_A sqrt(D)

    void validate() const;
};

struct WaveSolution {
    double A = 0.0;
    double b = 0.0;
    double y_ric = 0.0;
    double a_implied = 0.0;
    double source_budget = 0.0;  // eps c - delta h
    double C = 0.0;
    double z0 = 0.0;

    double amplitude() const;
};

/// f(z) = sqrt(y) tanh(sqrt(y) (z - z0)); throws DomainError for y_ric <= 0.
double riccati_f(double z, double y_ric, double z0);
/// f'(z) = y sech^2(sqrt(y) (z - z0)).
double riccati_f_prime(double z, double y_ric, double z0);

/// Closed-form coefficients. Throws NoSolutionError (carrying D y_ric) when y_ric <= 0 and
/// DomainError for k = 0 or C = 0.
WaveSolution solve_wave_coefficients(const WaveParams& wp);

/// u(z) = A f(z) + b.
double wave_u(double z, const WaveSolution& ws);
std::vector<double> wave_profile(std::span<const double> z, const WaveSolution& ws);

struct WaveDerivatives {
    double u, uz, uzz, uzzz;
};
/// Analytic derivatives through f' = y - f^2.
WaveDerivatives wave_derivatives(double z, const WaveSolution& ws);

struct OdeResidual {
    double residual = 0.0;  // max |LHS|
    double scale = 0.0;     // max over samples of the largest single term
};
/// Max of the third-order traveling-wave ODE LHS over the samples.
OdeResidual wave_residual_ode(const WaveSolution& ws, const WaveParams& wp, std::span<const double> z);

/// Model constants consistent with the wave: a = a_implied and c from the budget given h.
ModelParams wave_model_params(const WaveSolution& ws, const WaveParams& wp, double h = 0.0);

/// Bounded moving-frame profiles of w and y:
///   W(z) = (1/C) int_0^inf e^{-(eps beta/C) r} [eps c + eps U + k U^2](z + r) dr
///   Y(z) = -(delta/C) int_0^inf e^{-(delta d/C) r} [U - h](z + r) dr
/// (C > 0; the mirrored integrals are used for C < 0). p must come from wave_model_params.
double wave_W(double z, const WaveSolution& ws, const ModelParams& p, double k);
double wave_Y(double z, const WaveSolution& ws, const ModelParams& p);

/// Exact u(x, t) = U(x - C t) on the grid, with w, y from the Volterra formulas along it,
/// started from w0 = W(x), y0 = Y(x).
fd::FDState wave_full_state(const WaveSolution& ws, const WaveParams& wp, const Grid1D& grid, double h = 0.0);

// The family eps beta = 1, eps + delta = 0.04, k = 0.01, C = 1, A = sqrt(D), z0 = 0.

/// Parameters of the family (eps = delta = 0.02, beta = d = 50) at diffusion D.
WaveParams family_params(double D);
/// g(D)^2 = 3900 sqrt(D) - 1501 D + 150 D sqrt(D) - 500.
double family_g2(double D);
/// Direct closed form u(z) = sqrt(2) g / (20 D^{1/4}) tanh(sqrt(2) g z / (20 D^{3/4})) + sqrt(D)/2 - 2.
double family_u(double z, double D);
/// Amplitude sqrt(2) g / (20 D^{1/4}).
double family_amplitude(double D);
/// Root of g(D)^2 in (lo, hi) by bisection.
double family_admissibility_root(double lo = 0.01, double hi = 0.05);

}  // namespace fhr::waves
