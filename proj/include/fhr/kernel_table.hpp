#pragma once

#include <span>
#include <vector>

#include "fhr/grid.hpp"
#include "fhr/kernels.hpp"
#include "fhr/params.hpp"

namespace fhr {

struct KernelTableOptions {
    bool hat_weights = true;
    bool node_values = false;
    bool time_moments = false;
    // Add the cell-bubble term so spatial products also integrate the curvature of the data.
    bool curvature = true;
    // Time moments of the hat (and bubble) weights, for (g * K) star f.
    bool hat_moments = false;
};

/// Discretization data for one kernel K(x,t) = alpha phi(x,t) + int_0^t phi(x,u) W(u,t) du on
/// a grid. All pieces are computed from the x-independent weight W, with the Gaussian factor
/// of phi integrated exactly against piecewise-linear data.
///
///  hat weights  w_q(t_m) = int K(xi, t_m) hat(xi - q dx) dxi, q >= 0 (K is even), m = 1..nt.
///               Spatial convolution of K(., t_m) with a piecewise-linear profile is then
///               sum_q w_|q| f_{i-q}. The lag-0 slice is alpha times the identity.
///  bubbles      b_q(t_m) = int K(xi, t_m) (xi - q dx)((q+1) dx - xi)/2 dxi over the cell
///               [q dx, (q+1) dx]; with discrete second differences of f they remove the
///               O(dx^2) interpolation error of the hat product.
///  node values  K(x_i, t_n), n = 1..nt.
///  moments      A_k(x_i) = int_{t_k}^{t_k+1} K(x_i, tau) (t_k+1 - tau)/dt dtau and B_k with
///               (tau - t_k)/dt, so that int_0^{t_n} K(x_i, tau) g(t_n - tau) dtau for
///               piecewise-linear g is sum_k g_{n-k} A_k + g_{n-k-1} B_k.
class KernelTable {
public:
    KernelTable(kernels::KernelKind kind, const ModelParams& p, const Grid1D& grid, KernelTableOptions opt = {});

    kernels::KernelKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    const Grid1D& grid() const { return grid_; }
    const ModelParams& params() const { return params_; }

    /// Number of stored offsets at lag m (weights beyond are below 1e-17).
    int offsets(int m) const;
    std::span<const double> hat_weights(int m) const;

    /// out[i] (+)= scale * sum_q w_|q|(t_m) f[i - q] (plus the bubble term when enabled),
    /// zero padding outside the window. m = 0 gives scale * alpha * f.
    void apply_hat(int m, std::span<const double> f, std::span<double> out, double scale = 1.0,
                   bool accumulate = false) const;

    /// int K(xi, t_m) dxi over the whole line (sum of hat weights over all integer offsets).
    double mass(int m) const;

    double node_value(int n, int i) const;
    double moment_a(int k, int i) const { return moment_a_[static_cast<std::size_t>(k) * grid_.nx + i]; }
    double moment_b(int k, int i) const { return moment_b_[static_cast<std::size_t>(k) * grid_.nx + i]; }

    bool has_hat_weights() const { return !hat_.empty(); }
    bool has_node_values() const { return !nodes_.empty(); }
    bool has_time_moments() const { return !moment_a_.empty(); }
    bool has_hat_moments() const { return !hat_ma_.empty(); }

    /// Panel-k time moments of the hat and bubble weights, with the same linear factors as
    /// moment_a / moment_b. Bubble spans are empty without curvature.
    std::span<const double> hat_moment_a(int k) const;
    std::span<const double> hat_moment_b(int k) const;
    std::span<const double> bubble_moment_a(int k) const;
    std::span<const double> bubble_moment_b(int k) const;

private:
    std::vector<double> weight_nodes(double tau) const;
    void build_hat_and_nodes(const KernelTableOptions& opt);
    void build_moments();
    void build_hat_moments(bool curvature);
    void panel_rule(int k, std::vector<double>& taus, std::vector<double>& omegas) const;
    int hat_count(double tau) const;
    void accumulate_hat(double tau, const std::vector<double>& w, double scale, std::vector<double>& hat,
                        std::vector<double>* bubble) const;
    double w_part_value(double x, double tau, const std::vector<double>& w) const;

    kernels::KernelKind kind_;
    ModelParams params_;
    Grid1D grid_;
    double alpha_;

    std::vector<double> v_nodes_;
    std::vector<double> v_weights_;

    std::vector<std::vector<double>> hat_;  // index m - 1
    std::vector<std::vector<double>> bubble_;
    std::vector<double> nodes_;             // (n - 1) * nx + i
    std::vector<double> moment_a_;
    std::vector<double> moment_b_;
    std::vector<std::vector<double>> hat_ma_, hat_mb_, bub_ma_, bub_mb_;
};

/// out[i] += scale * (sum_q hat_|q| f[i - q] - sum_q bubble_q (cell curvature terms)),
/// zero padding outside the window.
void apply_even_weights(std::span<const double> hat, std::span<const double> bubble, double dx,
                        std::span<const double> f, std::span<double> out, double scale = 1.0);

/// Exact hat-function weights of a normalized Gaussian with standard deviation sd:
/// g_q = int G_sd(xi) hat(xi - q dx) dxi for q = 0..count-1.
void gaussian_hat_weights(double sd, double dx, int count, std::span<double> out);

/// Bubble weights b_q = int_{q dx}^{(q+1) dx} G_sd(xi) (xi - q dx)((q+1) dx - xi)/2 dxi.
void gaussian_bubble_weights(double sd, double dx, int count, std::span<double> out);

/// Composite Gauss-Legendre rule on [0, 1], graded toward 0, used for the u = t v^2 integrals.
void graded_unit_rule(std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace fhr
