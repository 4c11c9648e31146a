#pragma once

#include <limits>
#include <vector>

#include "fhr/function_ref.hpp"

namespace fhr::quad {

using Integrand = FunctionRef<double(double)>;

/// Stopping rule: the estimated error must fall below max(abs_tol, rel_tol * |I|).
struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;

    Tolerance scaled(double factor) const { return {abs_tol * factor, rel_tol * factor}; }
};

/// Full description of a one-dimensional integral.
struct QuadSpec {
    double lower = 0.0;
    double upper = 1.0;  // may be +infinity (only through integrate_laplace)
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    bool singular_upper_endpoint = false;

    Tolerance tolerance() const { return {abs_tol, rel_tol}; }
    /// Throws DomainError if the invariants do not hold.
    void validate() const;
};

struct Estimate {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = true;
};

/// |f(t)| <= M exp(gamma t) for all t >= valid_from.
struct DecayEnvelope {
    double M = 1.0;
    double gamma = 0.0;
    double valid_from = 0.0;
};

/// Upper bound on the number of interval bisections in adaptive rules.
inline constexpr int kMaxSubdivisions = 2000;
/// Default upper limit on the truncation horizon of semi-infinite integrals.
inline constexpr double kMaxLaplaceHorizon = 2000.0;

/// Globally adaptive 21-point Gauss-Kronrod integration of f over [a, b].
/// Throws AccuracyError (carrying the best estimate) if the tolerance is not reached.
Estimate integrate_smooth(Integrand f, double a, double b, Tolerance tol = {});

/// As integrate_smooth, but returns the best estimate with converged = false instead of
/// throwing. Meant for inner integrals whose error is absorbed by an outer bound.
Estimate try_integrate_smooth(Integrand f, double a, double b, Tolerance tol = {});

/// Same as integrate_smooth but starts from the supplied breakpoints (sorted, at least two).
Estimate integrate_panels(Integrand f, const std::vector<double>& breakpoints, Tolerance tol = {});

/// Integral over [lower, t] of f(y) / sqrt(t - y) for f smooth up to y = t.
/// The substitution y = t - s^2 removes the singularity before adaptive refinement.
Estimate integrate_singular_sqrt(Integrand f, double lower, double t, Tolerance tol = {});

/// Integral over [0, t] of f(y) / sqrt(t - y).
inline Estimate integrate_singular_sqrt(Integrand f, double t, Tolerance tol = {}) {
    return integrate_singular_sqrt(f, 0.0, t, tol);
}

/// Integral over [a, b] of g, where g may blow up like (y - a)^(-1/2) at the lower end.
/// Uses y = a + s^2.
Estimate integrate_sqrt_lower(Integrand g, double a, double b, Tolerance tol = {});

/// Dispatches on the spec: finite smooth or finite with an inverse-square-root upper end.
Estimate integrate(Integrand f, const QuadSpec& spec);

/// Integral over [0, inf) of exp(-s t) f(t).
/// The range is cut at the horizon T where the envelope bound on the tail drops below
/// abs_tol/2. Throws DivergenceError if s <= gamma and AccuracyError if T > max_horizon.
Estimate integrate_laplace(Integrand f, double s, const DecayEnvelope& envelope, Tolerance tol = {},
                           double max_horizon = kMaxLaplaceHorizon);

/// Truncation horizon used by integrate_laplace.
double laplace_horizon(double s, const DecayEnvelope& envelope, double abs_tol);

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre nodes and weights (Newton iteration on P_n).
GaussRule gauss_legendre(int n);

}  // namespace fhr::quad
