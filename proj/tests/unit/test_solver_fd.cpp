#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fhr/errors.hpp"
#include "fhr/solver_fd.hpp"
#include "oracles/ode_rk4.hpp"

namespace fd = fhr::fd;
namespace s = fhr::solver;
using fhr::Grid1D;
using fhr::ModelParams;
using fhr::SampledField;

namespace {

fd::FDConfig config(double half, int nx, double t_max, int nt) {
    fd::FDConfig c;
    c.grid.x_min = -half;
    c.grid.x_max = half;
    c.grid.nx = nx;
    c.grid.t_max = t_max;
    c.grid.nt = nt;
    return c;
}

// u_t = D u_xx - a u from exp(-x^2), with w and y switched off.
double heat_exact(double x, double t, const ModelParams& p) {
    const double q = 1.0 + 4.0 * p.D * t;
    return std::exp(-p.a * t) * std::exp(-x * x / q) / std::sqrt(q);
}

ModelParams heat_params() {
    ModelParams p;
    p.eps = 0.0;
    p.delta = 0.0;
    return p;
}

double heat_error(int nx, int nt) {
    const ModelParams p = heat_params();
    fd::FDConfig c = config(10, nx, 1, nt);
    c.reaction = false;
    s::InitialData d = s::InitialData::zeros(c.grid);
    d.u0 = fhr::sample_profile(c.grid, [&](double x) { return heat_exact(x, 0, p); });
    const auto st = fd::fd_solve(d, p, c);
    double err = 0.0;
    for (int i = 0; i < nx; ++i) err = std::max(err, std::abs(st.u(nt, i) - heat_exact(c.grid.x(i), 1, p)));
    return err;
}

}  // namespace

TEST(FD, ZeroDataStaysZero) {
    const ModelParams p;
    const fd::FDConfig c = config(5, 51, 1, 20);
    const auto st = fd::fd_solve(s::InitialData::zeros(c.grid), p, c);
    EXPECT_EQ(st.u.max_abs(), 0.0);
    EXPECT_EQ(st.w.max_abs(), 0.0);
    EXPECT_EQ(st.y.max_abs(), 0.0);
}

TEST(FD, UniformDataFollowsTheOde) {
    for (double kq : {0.0, 0.05}) {
        ModelParams p;
        p.eps = 0.8;
        p.beta = 1.5;
        p.delta = 0.6;
        p.d = 0.7;
        p.c = 0.3;
        p.h = 0.1;
        fd::FDConfig c = config(2, 21, 1, 2000);
        c.k = kq;
        s::InitialData d;
        d.u0.assign(c.grid.nx, 0.2);
        d.w0.assign(c.grid.nx, 0.1);
        d.y0.assign(c.grid.nx, -0.05);
        const auto st = fd::fd_solve(d, p, c);
        const auto ref = oracle::uniform_reference(p, kq, {0.2, 0.1, -0.05}, 1.0);
        for (int i : {0, 10, 20}) {
            EXPECT_NEAR(st.u(c.grid.nt, i), ref[0], 1e-6) << kq;
            EXPECT_NEAR(st.w(c.grid.nt, i), ref[1], 1e-6) << kq;
            EXPECT_NEAR(st.y(c.grid.nt, i), ref[2], 1e-6) << kq;
        }
    }
}

TEST(FD, ZeroFluxConservesMass) {
    ModelParams p = heat_params();
    p.a = 0.0;
    fd::FDConfig c = config(3, 61, 2, 100);
    c.reaction = false;
    s::InitialData d = s::InitialData::zeros(c.grid);
    d.u0 = fhr::sample_profile(c.grid, [](double x) { return 1.0 + std::cos(x) + 0.3 * x; });
    const auto st = fd::fd_solve(d, p, c);
    const double m0 = fhr::trapezoid(st.u.row(0), c.grid.dx());
    for (int n = 1; n <= c.grid.nt; ++n) EXPECT_NEAR(fhr::trapezoid(st.u.row(n), c.grid.dx()), m0, 1e-12);
}

TEST(FD, FixedValueHoldsBoundaries) {
    const ModelParams p;
    fd::FDConfig c = config(5, 51, 1, 20);
    c.boundary = fd::Boundary::fixed_value;
    s::InitialData d = s::InitialData::zeros(c.grid);
    d.u0 = fhr::sample_profile(c.grid, [](double x) { return 0.2 + 0.01 * x; });
    const auto st = fd::fd_solve(d, p, c);
    for (int n = 0; n <= c.grid.nt; ++n) {
        EXPECT_EQ(st.u(n, 0), d.u0[0]);
        EXPECT_EQ(st.u(n, c.grid.nx - 1), d.u0.back());
    }
}

TEST(FD, SecondOrderConvergence) {
    const double e1 = heat_error(201, 50);
    const double e2 = heat_error(401, 100);
    EXPECT_LT(e2, 1e-4);
    EXPECT_GT(e1 / e2, 3.5);
}

TEST(FD, ConfigValidation) {
    const ModelParams p;
    fd::FDConfig c = config(5, 51, 1, 20);
    c.theta = 0.0;  // r = 0.05 / 0.04
    EXPECT_THROW(c.validate(p), fhr::ConfigError);
    c.theta = 1.2;
    EXPECT_THROW(c.validate(p), fhr::ConfigError);
    c = config(5, 51, 1, 20);
    c.output_stride = 3;
    EXPECT_THROW(c.validate(p), fhr::ConfigError);
    c.output_stride = 20;
    EXPECT_THROW(c.validate(p), fhr::ConfigError);
    c.output_stride = 5;
    EXPECT_NO_THROW(c.validate(p));
    EXPECT_EQ(c.output_grid().nt, 4);
}

TEST(FD, OutputStrideKeepsEveryKthLevel) {
    const ModelParams p;
    fd::FDConfig c = config(5, 51, 1, 20);
    s::InitialData d = s::InitialData::zeros(c.grid);
    d.u0 = fhr::sample_profile(c.grid, [](double x) { return 0.3 * std::exp(-x * x); });
    const auto full = fd::fd_solve(d, p, c);
    c.output_stride = 4;
    const auto thin = fd::fd_solve(d, p, c);
    ASSERT_EQ(thin.u.rows(), 6);
    for (int n = 0; n < thin.u.rows(); ++n) {
        for (int i = 0; i < c.grid.nx; ++i) EXPECT_EQ(thin.u(n, i), full.u(4 * n, i));
    }
}

TEST(FD, BlowUpIsReported) {
    const ModelParams p;
    fd::FDConfig c = config(5, 51, 2, 20);
    s::InitialData d = s::InitialData::zeros(c.grid);
    d.u0.assign(c.grid.nx, -50.0);
    EXPECT_THROW(fd::fd_solve(d, p, c), fhr::BlowUpError);
}

TEST(FDResidual, ExactHeatSolutionResidualShrinks) {
    const ModelParams p = heat_params();
    auto residual = [&](int nx, int nt) {
        fd::FDConfig c = config(8, nx, 1, nt);
        c.reaction = false;
        const SampledField u = fhr::sample_field(c.grid, [&](double x, double t) { return heat_exact(x, t, p); });
        const SampledField z(c.grid);
        return fd::fd_residual(u, z, z, p, c);
    };
    const auto r1 = residual(161, 40);
    const auto r2 = residual(321, 80);
    EXPECT_GT(r1.max_u / r2.max_u, 3.5);
    EXPECT_GT(r1.l2_u / r2.l2_u, 3.5);
    EXPECT_EQ(r2.max_w, 0.0);
    EXPECT_EQ(r2.max_y, 0.0);
}

TEST(FDResidual, OwnSolutionHasSmallResidual) {
    const ModelParams p;
    const fd::FDConfig c = config(10, 201, 1, 100);
    s::InitialData d = s::InitialData::zeros(c.grid);
    d.u0 = fhr::sample_profile(c.grid, [](double x) { return 0.5 * std::exp(-x * x); });
    const auto st = fd::fd_solve(d, p, c);
    EXPECT_LT(fd::fd_residual(st.u, st.w, st.y, p, c).max_all(), 1e-3);
}
