#pragma once

#include "fhr/grid.hpp"
#include "fhr/params.hpp"
#include "fhr/solver_integral.hpp"

namespace fhr::fd {

enum class Boundary { zero_flux, fixed_value };

/// Method-of-lines setup. k = 0 is the base system with f(u) = u (a - u)(u - 1);
/// k != 0 switches to f(u) = 2u (a - u)(u - 1) and adds k u^2 to the w equation.
struct FDConfig {
    Grid1D grid;
    Boundary boundary = Boundary::zero_flux;
    double theta = 0.5;
    double k = 0.0;
    bool reaction = true;  // false drops the cubic f(u) (linear system)
    int output_stride = 1; // keep every stride-th time level; must divide grid.nt

    /// Grid of the stored fields (nt / output_stride levels).
    Grid1D output_grid() const;

    /// Throws ConfigError for theta outside [0, 1], an explicit step above D dt/dx^2 = 0.25,
    /// or a stride that does not divide nt.
    void validate(const ModelParams& p) const;
};

struct FDState {
    SampledField u;
    SampledField w;
    SampledField y;
};

/// Reaction term of the u equation for the configured system.
double fd_reaction(double u, double a, const FDConfig& cfg);

/// Theta scheme for D u_xx with a Heun predictor-corrector for the remaining u terms; w and y
/// advance by exact exponential integration against u interpolated linearly over each step.
/// Fixed-value boundaries hold u at its initial boundary values. Throws BlowUpError with the
/// failure time on a non-finite state.
FDState fd_solve(const solver::InitialData& data, const ModelParams& p, const FDConfig& cfg);

struct ResidualNorms {
    double max_u = 0.0, l2_u = 0.0;
    double max_w = 0.0, l2_w = 0.0;
    double max_y = 0.0, l2_y = 0.0;

    double max_all() const;
};

/// Pointwise residuals of the three equations at the half steps t_{n+1/2} and interior nodes:
/// forward differences in t, second differences in x, other terms averaged over the step.
/// L2 norms are sqrt(sum r^2 dx dt).
ResidualNorms fd_residual(const SampledField& u, const SampledField& w, const SampledField& y, const ModelParams& p,
                          const FDConfig& cfg);

}  // namespace fhr::fd
