#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fhr {

/// Uniform space-time grid on [x_min, x_max] x [0, t_max].
struct Grid1D {
    double x_min = -20.0;
    double x_max = 20.0;
    int nx = 401;  // number of spatial nodes
    double t_max = 1.0;
    int nt = 200;  // number of time steps; nt + 1 time levels

    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dt() const { return t_max / nt; }
    double x(int i) const { return x_min + i * dx(); }
    double t(int n) const { return n * dt(); }

    /// Throws ConfigError on nx < 3, nt < 2, empty window or non-positive horizon.
    void validate() const;

    /// True when x = 0 is (to rounding) a grid node, i.e. x_min / dx is an integer.
    bool zero_is_node() const;
    /// Index of the node at x = 0; requires zero_is_node().
    int zero_index() const;

    bool operator==(const Grid1D& other) const = default;
};

using Profile = std::vector<double>;

/// Values on (nt + 1) x nx nodes, row n holding the time level t_n.
class SampledField {
public:
    SampledField() = default;
    explicit SampledField(const Grid1D& grid, double fill = 0.0);

    const Grid1D& grid() const { return grid_; }
    int rows() const { return grid_.nt + 1; }
    int cols() const { return grid_.nx; }

    double& operator()(int n, int i) { return data_[static_cast<std::size_t>(n) * grid_.nx + i]; }
    double operator()(int n, int i) const { return data_[static_cast<std::size_t>(n) * grid_.nx + i]; }

    std::span<double> row(int n) { return {data_.data() + static_cast<std::size_t>(n) * grid_.nx, static_cast<std::size_t>(grid_.nx)}; }
    std::span<const double> row(int n) const {
        return {data_.data() + static_cast<std::size_t>(n) * grid_.nx, static_cast<std::size_t>(grid_.nx)};
    }
    Profile row_copy(int n) const { auto r = row(n); return {r.begin(), r.end()}; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    /// Throws ShapeError if the grids differ.
    void require_same_grid(const SampledField& other, const char* what) const;

    /// Throws DomainError naming the first non-finite entry.
    void require_finite(const char* what) const;

    double max_abs() const;

private:
    Grid1D grid_;
    std::vector<double> data_;
};

/// Sample f(x) at the nodes of the grid.
template <class F>
Profile sample_profile(const Grid1D& g, F f) {
    Profile p(g.nx);
    for (int i = 0; i < g.nx; ++i) p[i] = f(g.x(i));
    return p;
}

/// Sample f(x, t) at every node.
template <class F>
SampledField sample_field(const Grid1D& g, F f) {
    SampledField out(g);
    for (int n = 0; n <= g.nt; ++n) {
        for (int i = 0; i < g.nx; ++i) out(n, i) = f(g.x(i), g.t(n));
    }
    return out;
}

/// Trapezoidal integral of a profile over the window.
double trapezoid(std::span<const double> values, double dx);

/// Max |a - b| over rows n >= first_row.
double max_abs_diff(const SampledField& a, const SampledField& b, int first_row = 0);

/// Relative L2 difference ||a - b|| / ||b|| of two profiles (0 if both vanish).
double relative_l2(std::span<const double> a, std::span<const double> b);

}  // namespace fhr
