#include "fhr/convolution.hpp"

#include <algorithm>
#include <cmath>

#include "fhr/errors.hpp"
#include "fhr/parallel.hpp"

namespace fhr::conv {

SampledField conv_time(const SampledField& f, const SampledField& g) {
    f.require_same_grid(g, "conv_time");
    const Grid1D& grid = f.grid();
    const int nt = grid.nt;
    const int nx = grid.nx;
    const double dt = grid.dt();
    SampledField out(grid);
    parallel_for(1, static_cast<std::size_t>(nt) + 1, [&](std::size_t nn) {
        const int n = static_cast<int>(nn);
        for (int i = 0; i < nx; ++i) {
            double s = 0.5 * (f(n, i) * g(0, i) + f(0, i) * g(n, i));
            for (int k = 1; k < n; ++k) s += f(n - k, i) * g(k, i);
            out(n, i) = dt * s;
        }
    });
    return out;
}

std::vector<double> conv_time(std::span<const double> f, std::span<const double> g, double dt) {
    if (f.size() != g.size()) throw ShapeError("conv_time: signal lengths differ");
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t n = 1; n < f.size(); ++n) {
        double s = 0.5 * (f[n] * g[0] + f[0] * g[n]);
        for (std::size_t k = 1; k < n; ++k) s += f[n - k] * g[k];
        out[n] = dt * s;
    }
    return out;
}

TruncationReport check_decay(std::span<const double> f, std::span<const double> other, double dx, double tol) {
    TruncationReport r;
    if (f.empty()) return r;
    r.boundary_value = std::max(std::abs(f.front()), std::abs(f.back()));
    r.truncated = r.boundary_value > tol;
    double l1 = 0.0;
    for (double v : other) l1 += std::abs(v);
    // Mass a unit-decay tail of the boundary size would contribute, weighted by the partner.
    r.estimate = r.boundary_value * std::max(l1 * dx, 1.0);
    return r;
}

Profile conv_space(std::span<const double> f, std::span<const double> g, const Grid1D& grid,
                   TruncationReport* report, double decay_tol) {
    const int nx = grid.nx;
    if (static_cast<int>(f.size()) != nx || static_cast<int>(g.size()) != nx) {
        throw ShapeError("conv_space: profile length differs from the grid");
    }
    const int z = grid.zero_index();
    const double dx = grid.dx();
    if (report) {
        const TruncationReport rf = check_decay(f, g, dx, decay_tol);
        const TruncationReport rg = check_decay(g, f, dx, decay_tol);
        report->truncated = rf.truncated || rg.truncated;
        report->boundary_value = std::max(rf.boundary_value, rg.boundary_value);
        report->estimate = rf.estimate + rg.estimate;
    }
    Profile out(nx, 0.0);
    for (int i = 0; i < nx; ++i) {
        // g(x_i - x_j) sits at node i - j + z.
        const int jlo = std::max(0, i + z - (nx - 1));
        const int jhi = std::min(nx - 1, i + z);
        double s = 0.0;
        for (int j = jlo; j <= jhi; ++j) {
            const double w = (j == 0 || j == nx - 1) ? 0.5 : 1.0;
            s += w * f[j] * g[i - j + z];
        }
        out[i] = s * dx;
    }
    return out;
}

SampledField conv_space_rows(std::span<const double> f, const SampledField& g) {
    const Grid1D& grid = g.grid();
    SampledField out(grid);
    parallel_for(0, static_cast<std::size_t>(grid.nt) + 1, [&](std::size_t n) {
        const Profile r = conv_space(f, g.row(static_cast<int>(n)), grid);
        std::copy(r.begin(), r.end(), out.row(static_cast<int>(n)).begin());
    });
    return out;
}

SampledField conv_space_kernel(const KernelTable& K, std::span<const double> f) {
    const Grid1D& grid = K.grid();
    SampledField out(grid);
    parallel_for(0, static_cast<std::size_t>(grid.nt) + 1, [&](std::size_t n) {
        K.apply_hat(static_cast<int>(n), f, out.row(static_cast<int>(n)));
    });
    return out;
}

SampledField conv_spacetime(const KernelTable& K, const SampledField& F) {
    const Grid1D& grid = K.grid();
    if (!(F.grid() == grid)) throw ShapeError("conv_spacetime: field and kernel table grids differ");
    const int nt = grid.nt;
    const double dt = grid.dt();
    SampledField out(grid);
    parallel_for(1, static_cast<std::size_t>(nt) + 1, [&](std::size_t nn) {
        const int n = static_cast<int>(nn);
        std::span<double> row = out.row(n);
        for (int m = 0; m <= n; ++m) {
            const double c = (m == 0 || m == n) ? 0.5 * dt : dt;
            K.apply_hat(m, F.row(n - m), row, c, true);
        }
    });
    return out;
}

SampledField conv_spacetime_separable(const KernelTable& K, std::span<const double> f, std::span<const double> g) {
    const Grid1D& grid = K.grid();
    const int nt = grid.nt;
    const int nx = grid.nx;
    if (static_cast<int>(g.size()) != nt + 1) throw ShapeError("conv_spacetime_separable: signal length");
    const double dt = grid.dt();
    const SampledField slices = conv_space_kernel(K, f);
    SampledField out(grid);
    parallel_for(1, static_cast<std::size_t>(nt) + 1, [&](std::size_t nn) {
        const int n = static_cast<int>(nn);
        std::span<double> row = out.row(n);
        for (int m = 0; m <= n; ++m) {
            const double c = ((m == 0 || m == n) ? 0.5 * dt : dt) * g[n - m];
            if (c == 0.0) continue;
            const std::span<const double> s = slices.row(m);
            for (int i = 0; i < nx; ++i) row[i] += c * s[i];
        }
    });
    return out;
}

SampledField conv_time_kernel(const KernelTable& K, std::span<const double> g) {
    if (!K.has_time_moments()) throw Error("conv_time_kernel: table built without time moments");
    const Grid1D& grid = K.grid();
    const int nt = grid.nt;
    const int nx = grid.nx;
    if (static_cast<int>(g.size()) != nt + 1) throw ShapeError("conv_time_kernel: signal length");
    SampledField out(grid);
    parallel_for(1, static_cast<std::size_t>(nt) + 1, [&](std::size_t nn) {
        const int n = static_cast<int>(nn);
        std::span<double> row = out.row(n);
        for (int k = 0; k < n; ++k) {
            const double ga = g[n - k];
            const double gb = g[n - k - 1];
            for (int i = 0; i < nx; ++i) row[i] += ga * K.moment_a(k, i) + gb * K.moment_b(k, i);
        }
    });
    return out;
}

SampledField conv_time_kernel_space(const KernelTable& K, std::span<const double> g, std::span<const double> f) {
    if (!K.has_hat_moments()) throw Error("conv_time_kernel_space: table built without hat moments");
    const Grid1D& grid = K.grid();
    const int nt = grid.nt;
    if (static_cast<int>(g.size()) != nt + 1) throw ShapeError("conv_time_kernel_space: signal length");
    if (static_cast<int>(f.size()) != grid.nx) throw ShapeError("conv_time_kernel_space: profile length");
    SampledField out(grid);
    parallel_for(1, static_cast<std::size_t>(nt) + 1, [&](std::size_t nn) {
        const int n = static_cast<int>(nn);
        std::vector<double> hat, bub;
        auto add = [](std::vector<double>& acc, std::span<const double> w, double c) {
            if (acc.size() < w.size()) acc.resize(w.size(), 0.0);
            for (std::size_t q = 0; q < w.size(); ++q) acc[q] += c * w[q];
        };
        for (int k = 0; k < n; ++k) {
            add(hat, K.hat_moment_a(k), g[n - k]);
            add(hat, K.hat_moment_b(k), g[n - k - 1]);
            add(bub, K.bubble_moment_a(k), g[n - k]);
            add(bub, K.bubble_moment_b(k), g[n - k - 1]);
        }
        apply_even_weights(hat, bub, grid.dx(), f, out.row(n));
    });
    return out;
}

std::vector<double> kernel_mass(const KernelTable& K) {
    std::vector<double> m(K.grid().nt + 1);
    for (int n = 0; n <= K.grid().nt; ++n) m[n] = K.mass(n);
    return m;
}

std::vector<double> cumulative_trapezoid(std::span<const double> s, double dt) {
    std::vector<double> out(s.size(), 0.0);
    for (std::size_t n = 1; n < s.size(); ++n) out[n] = out[n - 1] + 0.5 * dt * (s[n - 1] + s[n]);
    return out;
}

}  // namespace fhr::conv
