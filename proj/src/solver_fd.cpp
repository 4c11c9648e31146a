#include "fhr/solver_fd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "fhr/errors.hpp"

namespace fhr::fd {

namespace {

// Constant tridiagonal system solved by the Thomas algorithm with a cached factorization.
class Tridiagonal {
public:
    Tridiagonal(std::vector<double> lower, std::vector<double> diag, std::vector<double> upper)
        : lower_(std::move(lower)), cp_(diag.size()), inv_(diag.size()) {
        const std::size_t n = diag.size();
        inv_[0] = 1.0 / diag[0];
        cp_[0] = upper[0] * inv_[0];
        for (std::size_t i = 1; i < n; ++i) {
            inv_[i] = 1.0 / (diag[i] - lower_[i] * cp_[i - 1]);
            cp_[i] = i + 1 < n ? upper[i] * inv_[i] : 0.0;
        }
    }

    void solve(std::vector<double>& b) const {
        const std::size_t n = b.size();
        b[0] *= inv_[0];
        for (std::size_t i = 1; i < n; ++i) b[i] = (b[i] - lower_[i] * b[i - 1]) * inv_[i];
        for (std::size_t i = n - 1; i-- > 0;) b[i] -= cp_[i] * b[i + 1];
    }

private:
    std::vector<double> lower_, cp_, inv_;
};

}  // namespace

void FDConfig::validate(const ModelParams& p) const {
    grid.validate();
    if (!(theta >= 0.0 && theta <= 1.0)) throw ConfigError("fd.theta", "must lie in [0, 1]");
    const double r = p.D * grid.dt() / (grid.dx() * grid.dx());
    if (theta < 0.5 && r > 0.25) {
        std::ostringstream msg;
        msg << "explicit-leaning step needs D dt/dx^2 <= 0.25, got " << r;
        throw ConfigError("fd.theta", msg.str());
    }
    if (output_stride < 1 || grid.nt % output_stride != 0 || grid.nt / output_stride < 2) {
        throw ConfigError("fd.output_stride", "must divide nt and leave at least 2 stored steps");
    }
}

Grid1D FDConfig::output_grid() const {
    Grid1D g = grid;
    g.nt = grid.nt / output_stride;
    return g;
}

double fd_reaction(double u, double a, const FDConfig& cfg) {
    const double s = cfg.k != 0.0 ? 2.0 : 1.0;
    if (!cfg.reaction) return -s * a * u;
    return s * u * (a - u) * (u - 1.0);
}

double ResidualNorms::max_all() const { return std::max({max_u, max_w, max_y}); }

FDState fd_solve(const solver::InitialData& data, const ModelParams& p, const FDConfig& cfg) {
    p.validate();
    cfg.validate(p);
    const Grid1D& g = cfg.grid;
    data.validate(g);
    const int N = g.nx;
    const double dt = g.dt();
    const double dx = g.dx();
    const double r = p.D * dt / (dx * dx);
    const double th = cfg.theta;
    const bool fixed = cfg.boundary == Boundary::fixed_value;

    std::vector<double> lo(N, -th * r), di(N, 1.0 + 2.0 * th * r), up(N, -th * r);
    if (fixed) {
        di[0] = di[N - 1] = 1.0;
        up[0] = lo[N - 1] = 0.0;
    } else {
        up[0] = -2.0 * th * r;
        lo[N - 1] = -2.0 * th * r;
    }
    lo[0] = up[N - 1] = 0.0;
    const Tridiagonal A(lo, di, up);

    auto lap = [&](const std::vector<double>& u, int i) {
        if (i == 0) return 2.0 * (u[1] - u[0]);
        if (i == N - 1) return 2.0 * (u[N - 2] - u[N - 1]);
        return u[i - 1] - 2.0 * u[i] + u[i + 1];
    };

    const double eb = p.eps_beta();
    const double dd = p.delta_d();
    const auto [aw, bw] = solver::exp_linear_weights(eb, dt);
    const auto [ay, by] = solver::exp_linear_weights(dd, dt);
    const double ew = std::exp(-eb * dt);
    const double ey = std::exp(-dd * dt);

    const Grid1D og = cfg.output_grid();
    FDState st{SampledField(og), SampledField(og), SampledField(og)};
    std::vector<double> u(data.u0), w(data.w0), y(data.y0);
    std::vector<double> lin(N), Rn(N), us(N), ws(N), ys(N), rhs(N);

    auto store = [&](int step) {
        if (step % cfg.output_stride != 0) return;
        const int n = step / cfg.output_stride;
        std::copy(u.begin(), u.end(), st.u.row(n).begin());
        std::copy(w.begin(), w.end(), st.w.row(n).begin());
        std::copy(y.begin(), y.end(), st.y.row(n).begin());
    };
    auto advance_wy = [&](const std::vector<double>& u0, const std::vector<double>& u1, const std::vector<double>& w0,
                          const std::vector<double>& y0, std::vector<double>& w1, std::vector<double>& y1) {
        for (int i = 0; i < N; ++i) {
            const double s0 = p.eps * u0[i] + cfg.k * u0[i] * u0[i];
            const double s1 = p.eps * u1[i] + cfg.k * u1[i] * u1[i];
            w1[i] = ew * w0[i] + (aw + bw) * p.eps * p.c + aw * s0 + bw * s1;
            y1[i] = ey * y0[i] + (ay + by) * p.delta * p.h - p.delta * (ay * u0[i] + by * u1[i]);
        }
    };
    auto reaction = [&](const std::vector<double>& uu, const std::vector<double>& ww, const std::vector<double>& yy,
                        std::vector<double>& out) {
        for (int i = 0; i < N; ++i) out[i] = fd_reaction(uu[i], p.a, cfg) - ww[i] + yy[i];
    };
    auto solve_u = [&](const std::vector<double>& R, std::vector<double>& out) {
        for (int i = 0; i < N; ++i) out[i] = lin[i] + dt * R[i];
        if (fixed) {
            out[0] = data.u0[0];
            out[N - 1] = data.u0[N - 1];
        }
        A.solve(out);
    };

    store(0);
    std::vector<double> R2(N), w1(N), y1(N);
    for (int n = 0; n < g.nt; ++n) {
        for (int i = 0; i < N; ++i) lin[i] = u[i] + (1.0 - th) * r * lap(u, i);
        reaction(u, w, y, Rn);
        solve_u(Rn, us);
        advance_wy(u, us, w, y, ws, ys);
        reaction(us, ws, ys, R2);
        for (int i = 0; i < N; ++i) R2[i] = 0.5 * (Rn[i] + R2[i]);
        solve_u(R2, rhs);
        advance_wy(u, rhs, w, y, w1, y1);
        u.swap(rhs);
        w.swap(w1);
        y.swap(y1);
        for (int i = 0; i < N; ++i) {
            if (!std::isfinite(u[i]) || !std::isfinite(w[i]) || !std::isfinite(y[i])) {
                std::ostringstream msg;
                msg << "fd_solve: non-finite state at t = " << g.t(n + 1) << ", x = " << g.x(i);
                throw BlowUpError(msg.str(), g.t(n + 1));
            }
        }
        store(n + 1);
    }
    return st;
}

ResidualNorms fd_residual(const SampledField& u, const SampledField& w, const SampledField& y, const ModelParams& p,
                          const FDConfig& cfg) {
    u.require_same_grid(w, "fd_residual");
    u.require_same_grid(y, "fd_residual");
    const Grid1D& g = u.grid();
    const double dt = g.dt();
    const double dx = g.dx();
    ResidualNorms r;
    double su = 0.0, sw = 0.0, sy = 0.0;
    for (int n = 0; n < g.nt; ++n) {
        for (int i = 1; i + 1 < g.nx; ++i) {
            auto avg = [&](const SampledField& f) { return 0.5 * (f(n, i) + f(n + 1, i)); };
            auto uxx = [&](int m) { return (u(m, i - 1) - 2.0 * u(m, i) + u(m, i + 1)) / (dx * dx); };
            const double ut = (u(n + 1, i) - u(n, i)) / dt;
            const double wt = (w(n + 1, i) - w(n, i)) / dt;
            const double yt = (y(n + 1, i) - y(n, i)) / dt;
            const double fu = 0.5 * (fd_reaction(u(n, i), p.a, cfg) + fd_reaction(u(n + 1, i), p.a, cfg));
            const double u2 = 0.5 * (u(n, i) * u(n, i) + u(n + 1, i) * u(n + 1, i));
            const double ru = ut - (p.D * 0.5 * (uxx(n) + uxx(n + 1)) + fu - avg(w) + avg(y));
            const double rw = wt - (p.eps * (-p.beta * avg(w) + p.c + avg(u)) + cfg.k * u2);
            const double ry = yt - p.delta * (-avg(u) + p.h - p.d * avg(y));
            r.max_u = std::max(r.max_u, std::abs(ru));
            r.max_w = std::max(r.max_w, std::abs(rw));
            r.max_y = std::max(r.max_y, std::abs(ry));
            su += ru * ru;
            sw += rw * rw;
            sy += ry * ry;
        }
    }
    const double cell = dx * dt;
    r.l2_u = std::sqrt(su * cell);
    r.l2_w = std::sqrt(sw * cell);
    r.l2_y = std::sqrt(sy * cell);
    return r;
}

}  // namespace fhr::fd
