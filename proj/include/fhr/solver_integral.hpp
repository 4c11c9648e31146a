#pragma once

#include <utility>
#include <vector>

#include "fhr/grid.hpp"
#include "fhr/kernel_table.hpp"
#include "fhr/kernels.hpp"
#include "fhr/params.hpp"

namespace fhr::solver {

/// Initial profiles u0, w0, y0 on a grid.
struct InitialData {
    Profile u0;
    Profile w0;
    Profile y0;

    /// All-zero data on the grid.
    static InitialData zeros(const Grid1D& grid);
    /// Throws ShapeError on length mismatch, DomainError on non-finite entries.
    void validate(const Grid1D& grid) const;
};

/// Cubic reaction phi(u) = u^2 (a + 1 - u).
inline double phi_reaction(double u, double a) { return u * u * (a + 1.0 - u); }

/// F(x, t, u) = phi(u) - w0 e^{-eps beta t} + y0 e^{-delta d t} - (c/beta)(1 - e^{-eps beta t})
///             + (h/d)(1 - e^{-delta d t}), pointwise on the grid of u.
SampledField source_F(const SampledField& u, const InitialData& data, const ModelParams& p);

enum class DataPath {
    closed_form,  // K_delta based expressions
    generic,      // H (x) F_data with the generic space-time product
};

/// H (x) (F - phi(u)), the part of the integral equation fixed by the data.
/// closed_form:
///   (y0 - w0) star K_delta + (eps beta - delta d) w0 star (e^{-eps beta t} * K_delta)
///   + (c/beta)(delta d - eps beta) e^{-eps beta t} * m_delta + (h/d - c/beta) delta d int_0^t m_delta
/// with m_delta the mass of K_delta. Only valid for the kernel H = H1 - H2.
SampledField data_terms(const InitialData& data, const ModelParams& p, const Grid1D& grid, DataPath path,
                        kernels::KernelKind h_kind = kernels::KernelKind::H);

struct PicardOptions {
    double tol = 1e-8;
    int max_iter = 50;
    double blowup_cap = 1e6;
    kernels::KernelForm form = kernels::KernelForm::literal;
    DataPath data_path = DataPath::closed_form;
    bool nonlinear = true;  // false zeroes phi(u) (linearized run)
};

struct SolveReport {
    SampledField u;
    SampledField w;
    SampledField y;
    int iterations = 0;
    double final_update_norm = 0.0;
    bool converged = false;
    std::vector<double> update_norms;  // sup-norm update per iteration
    double fixed_point_residual = 0.0; // ||u - T(u)|| after the last iterate
};

/// Picard iteration u^{k+1} = H star u0 + H (x) F(u^k) from u^0 = H star u0. The data parts
/// of F are computed once. Throws DivergenceError when sup|u| exceeds blowup_cap.
SolveReport picard_solve(const InitialData& data, const ModelParams& p, const Grid1D& grid,
                         const PicardOptions& opt = {});

/// w and y from u by exponential-weight product trapezoid (exact for piecewise-linear u):
///   w = w0 e^{-eps beta t} + (c/beta)(1 - e^{-eps beta t}) + int_0^t e^{-eps beta (t - tau)} (eps u + k u^2) dtau
///   y = y0 e^{-delta d t} + (h/d)(1 - e^{-delta d t}) - delta int_0^t e^{-delta d (t - tau)} u dtau
std::pair<SampledField, SampledField> recover_wy(const SampledField& u, const InitialData& data,
                                                 const ModelParams& p, double k = 0.0);

/// Weights (a, b) with int_0^h e^{-rate (h - s)} (f0 (1 - s/h) + f1 s/h) ds = a f0 + b f1.
std::pair<double, double> exp_linear_weights(double rate, double h);

/// Scalar mass M(t) = int H dx of the fundamental solution, from the Volterra equation
///   M(t) = 1 - int_0^t [a + kappa(t - tau)] M(tau) dtau,
///   kappa(s) = (1 - e^{-eps beta s})/beta + (1 - e^{-delta d s})/d,
/// by the trapezoidal rule on nt steps over [0, t_max]. Returns nt + 1 values.
std::vector<double> mass_volterra(const ModelParams& p, double t_max, int nt);

}  // namespace fhr::solver
