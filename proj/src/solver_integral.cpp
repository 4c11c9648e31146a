#include "fhr/solver_integral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fhr/convolution.hpp"
#include "fhr/errors.hpp"

namespace fhr::solver {

namespace {

std::vector<double> exp_signal(const Grid1D& g, double rate) {
    std::vector<double> s(g.nt + 1);
    for (int n = 0; n <= g.nt; ++n) s[n] = std::exp(-rate * g.t(n));
    return s;
}

void add_uniform(SampledField& f, const std::vector<double>& s, double scale) {
    for (int n = 0; n < f.rows(); ++n) {
        for (double& v : f.row(n)) v += scale * s[n];
    }
}

void add_field(SampledField& f, const SampledField& g, double scale = 1.0) {
    auto& a = f.data();
    const auto& b = g.data();
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += scale * b[k];
}

}  // namespace

InitialData InitialData::zeros(const Grid1D& grid) {
    return {Profile(grid.nx, 0.0), Profile(grid.nx, 0.0), Profile(grid.nx, 0.0)};
}

void InitialData::validate(const Grid1D& grid) const {
    const auto n = static_cast<std::size_t>(grid.nx);
    if (u0.size() != n || w0.size() != n || y0.size() != n) {
        throw ShapeError("initial data: profile length differs from the grid");
    }
    for (const Profile* pr : {&u0, &w0, &y0}) {
        for (double v : *pr) {
            if (!std::isfinite(v)) throw DomainError("initial data: non-finite entry");
        }
    }
}

SampledField source_F(const SampledField& u, const InitialData& data, const ModelParams& p) {
    const Grid1D& g = u.grid();
    data.validate(g);
    SampledField F(g);
    const double eb = p.eps_beta();
    const double dd = p.delta_d();
    for (int n = 0; n <= g.nt; ++n) {
        const double t = g.t(n);
        const double ee = std::exp(-eb * t);
        const double ed = std::exp(-dd * t);
        const double uniform = -(p.c / p.beta) * (1.0 - ee) + (p.h / p.d) * (1.0 - ed);
        for (int i = 0; i < g.nx; ++i) {
            F(n, i) = phi_reaction(u(n, i), p.a) - data.w0[i] * ee + data.y0[i] * ed + uniform;
        }
    }
    return F;
}

SampledField data_terms(const InitialData& data, const ModelParams& p, const Grid1D& grid, DataPath path,
                        kernels::KernelKind h_kind) {
    data.validate(grid);
    const double eb = p.eps_beta();
    const double dd = p.delta_d();
    const double dt = grid.dt();
    const std::vector<double> ee = exp_signal(grid, eb);
    const std::vector<double> ed = exp_signal(grid, dd);

    if (path == DataPath::closed_form) {
        if (h_kind != kernels::KernelKind::H) {
            throw Error("data_terms: the closed form only holds for the kernel H = H1 - H2");
        }
        const KernelTable Kd(kernels::KernelKind::K_delta, p, grid, {.hat_weights = true, .hat_moments = true});
        Profile diff(grid.nx);
        for (int i = 0; i < grid.nx; ++i) diff[i] = data.y0[i] - data.w0[i];
        SampledField out = conv::conv_space_kernel(Kd, diff);
        if (eb != dd) add_field(out, conv::conv_time_kernel_space(Kd, ee, data.w0), eb - dd);
        const std::vector<double> md = conv::kernel_mass(Kd);
        if (p.c != 0.0 && eb != dd) add_uniform(out, conv::conv_time(ee, md, dt), (p.c / p.beta) * (dd - eb));
        const double ch = (p.h / p.d - p.c / p.beta) * dd;
        if (ch != 0.0) add_uniform(out, conv::cumulative_trapezoid(md, dt), ch);
        return out;
    }

    const KernelTable H(h_kind, p, grid);
    Profile neg_w0(grid.nx);
    for (int i = 0; i < grid.nx; ++i) neg_w0[i] = -data.w0[i];
    SampledField out = conv::conv_spacetime_separable(H, neg_w0, ee);
    add_field(out, conv::conv_spacetime_separable(H, data.y0, ed));
    // Spatially uniform forcing only sees the kernel mass.
    std::vector<double> g(grid.nt + 1);
    bool any = false;
    for (int n = 0; n <= grid.nt; ++n) {
        g[n] = -(p.c / p.beta) * (1.0 - ee[n]) + (p.h / p.d) * (1.0 - ed[n]);
        any = any || g[n] != 0.0;
    }
    if (any) add_uniform(out, conv::conv_time(conv::kernel_mass(H), g, dt), 1.0);
    return out;
}

SolveReport picard_solve(const InitialData& data, const ModelParams& p, const Grid1D& grid, const PicardOptions& opt) {
    p.validate();
    grid.validate();
    data.validate(grid);
    if (!(opt.tol > 0.0)) throw ConfigError("picard.tol", "must be positive");
    if (opt.max_iter < 1) throw ConfigError("picard.max_iter", "must be at least 1");

    const kernels::KernelKind kind = kernels::kind_for(opt.form);
    const DataPath path = opt.form == kernels::KernelForm::literal ? opt.data_path : DataPath::generic;
    const KernelTable H(kind, p, grid);

    SampledField base = conv::conv_space_kernel(H, data.u0);
    SampledField u = base;
    add_field(base, data_terms(data, p, grid, path, kind));

    auto apply_T = [&](const SampledField& cur) {
        SampledField next = base;
        if (!opt.nonlinear) return next;
        SampledField Fphi(grid);
        for (std::size_t k = 0; k < cur.data().size(); ++k) Fphi.data()[k] = phi_reaction(cur.data()[k], p.a);
        add_field(next, conv::conv_spacetime(H, Fphi));
        return next;
    };

    SolveReport rep;
    for (int it = 1; it <= opt.max_iter; ++it) {
        SampledField next = apply_T(u);
        double upd = 0.0;
        for (std::size_t k = 0; k < next.data().size(); ++k) {
            const double v = next.data()[k];
            if (!std::isfinite(v) || std::abs(v) > opt.blowup_cap) {
                std::ostringstream msg;
                msg << "picard_solve: iterate " << it << " exceeds the blow-up cap " << opt.blowup_cap;
                throw DivergenceError(msg.str());
            }
            upd = std::max(upd, std::abs(v - u.data()[k]));
        }
        u = std::move(next);
        rep.iterations = it;
        rep.update_norms.push_back(upd);
        rep.final_update_norm = upd;
        if (upd < opt.tol) {
            rep.converged = true;
            break;
        }
    }
    const SampledField check = apply_T(u);
    rep.fixed_point_residual = max_abs_diff(check, u);
    auto [w, y] = recover_wy(u, data, p);
    rep.u = std::move(u);
    rep.w = std::move(w);
    rep.y = std::move(y);
    return rep;
}

std::pair<double, double> exp_linear_weights(double rate, double h) {
    const double z = rate * h;
    if (std::abs(z) < 0.5) {
        // int_0^1 e^{-z v} v dv and int_0^1 e^{-z v} (1 - v) dv as power series in z.
        double sa = 0.0;
        double sb = 0.0;
        double term = 1.0;  // (-z)^j / j!
        for (int j = 0; j < 25; ++j) {
            sa += term / (j + 2);
            sb += term / ((j + 1.0) * (j + 2.0));
            term *= -z / (j + 1);
        }
        return {h * sa, h * sb};
    }
    const double e = std::exp(-z);
    return {h * (1.0 - (1.0 + z) * e) / (z * z), h * (z - 1.0 + e) / (z * z)};
}

std::pair<SampledField, SampledField> recover_wy(const SampledField& u, const InitialData& data,
                                                 const ModelParams& p, double k) {
    const Grid1D& g = u.grid();
    data.validate(g);
    const double dt = g.dt();
    const double eb = p.eps_beta();
    const double dd = p.delta_d();
    const auto [aw, bw] = exp_linear_weights(eb, dt);
    const auto [ay, by] = exp_linear_weights(dd, dt);
    const double dw = std::exp(-eb * dt);
    const double dy = std::exp(-dd * dt);
    SampledField w(g);
    SampledField y(g);
    for (int i = 0; i < g.nx; ++i) {
        double Iw = 0.0;
        double Iy = 0.0;
        auto sw = [&](int n) { const double v = u(n, i); return p.eps * v + k * v * v; };
        w(0, i) = data.w0[i];
        y(0, i) = data.y0[i];
        for (int n = 1; n <= g.nt; ++n) {
            Iw = dw * Iw + aw * sw(n - 1) + bw * sw(n);
            Iy = dy * Iy + ay * u(n - 1, i) + by * u(n, i);
            const double t = g.t(n);
            const double ee = std::exp(-eb * t);
            const double ed = std::exp(-dd * t);
            w(n, i) = data.w0[i] * ee + (p.c / p.beta) * (1.0 - ee) + Iw;
            y(n, i) = data.y0[i] * ed + (p.h / p.d) * (1.0 - ed) - p.delta * Iy;
        }
    }
    return {std::move(w), std::move(y)};
}

std::vector<double> mass_volterra(const ModelParams& p, double t_max, int nt) {
    if (nt < 1 || !(t_max > 0.0)) throw DomainError("mass_volterra: need t_max > 0 and nt >= 1");
    const double dt = t_max / nt;
    const double eb = p.eps_beta();
    const double dd = p.delta_d();
    std::vector<double> ker(nt + 1);
    for (int n = 0; n <= nt; ++n) {
        const double s = n * dt;
        ker[n] = p.a - std::expm1(-eb * s) / p.beta - std::expm1(-dd * s) / p.d;
    }
    std::vector<double> M(nt + 1);
    M[0] = 1.0;
    for (int n = 1; n <= nt; ++n) {
        double s = 0.5 * ker[n] * M[0];
        for (int j = 1; j < n; ++j) s += ker[n - j] * M[j];
        M[n] = (1.0 - dt * s) / (1.0 + 0.5 * dt * ker[0]);
    }
    return M;
}

}  // namespace fhr::solver
