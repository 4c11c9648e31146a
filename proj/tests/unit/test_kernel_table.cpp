#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fhr/errors.hpp"
#include "fhr/kernel_table.hpp"
#include "fhr/kernels.hpp"
#include "fhr/quad.hpp"
#include "oracles/mass_ode.hpp"

namespace k = fhr::kernels;
namespace q = fhr::quad;
using fhr::Grid1D;
using fhr::KernelTable;
using fhr::ModelParams;

namespace {

Grid1D small_grid() {
    Grid1D g;
    g.x_min = -10.0;
    g.x_max = 10.0;
    g.nx = 101;
    g.t_max = 1.0;
    g.nt = 10;
    return g;
}

constexpr q::Tolerance kRef{1e-12, 1e-10};

double kernel_value(k::KernelKind kind, double x, double t, const ModelParams& p) {
    return k::eval_resolvent(kind, x, t, p, kRef).value;
}

// int K(q dx + s, t) (1 - |s|/dx) ds over |s| < dx.
double hat_reference(k::KernelKind kind, int qi, double dx, double t, const ModelParams& p) {
    auto left = [&](double s) { return kernel_value(kind, qi * dx - s, t, p) * (1.0 - s / dx); };
    auto right = [&](double s) { return kernel_value(kind, qi * dx + s, t, p) * (1.0 - s / dx); };
    return q::integrate_smooth(left, 0.0, dx, kRef).value + q::integrate_smooth(right, 0.0, dx, kRef).value;
}

}  // namespace

TEST(KernelTable, GaussianHatWeightsSumToOne) {
    for (double sd : {0.05, 0.3, 1.0, 2.5}) {
        const double dx = 0.1;
        const int count = static_cast<int>(12 * sd / dx) + 3;
        std::vector<double> w(count);
        fhr::gaussian_hat_weights(sd, dx, count, w);
        double total = w[0];
        for (int i = 1; i < count; ++i) total += 2.0 * w[i];
        EXPECT_NEAR(total, 1.0, 1e-13) << "sd = " << sd;
        for (double v : w) EXPECT_GE(v, -1e-17);
    }
}

TEST(KernelTable, GaussianHatWeightsMatchQuadrature) {
    const double sd = 0.37;
    const double dx = 0.2;
    std::vector<double> w(8);
    fhr::gaussian_hat_weights(sd, dx, 8, w);
    for (int qi = 0; qi < 8; ++qi) {
        auto f = [&](double xi) {
            const double g = std::exp(-xi * xi / (2 * sd * sd)) / (sd * std::sqrt(2 * std::numbers::pi));
            return g * std::max(0.0, 1.0 - std::abs(xi - qi * dx) / dx);
        };
        const double ref = q::integrate_panels(f, {qi * dx - dx, qi * dx, qi * dx + dx}, {1e-15, 1e-13}).value;
        EXPECT_NEAR(w[qi], ref, 1e-14) << "q = " << qi;
    }
}

TEST(KernelTable, DegenerateGaussianIsIdentity) {
    std::vector<double> w(3);
    fhr::gaussian_hat_weights(0.0, 0.1, 3, w);
    EXPECT_EQ(w[0], 1.0);
    EXPECT_EQ(w[1], 0.0);
}

TEST(KernelTable, GradedRuleIntegratesPolynomials) {
    std::vector<double> v, w;
    fhr::graded_unit_rule(v, w);
    ASSERT_EQ(v.size(), 80u);
    for (int deg = 0; deg <= 12; ++deg) {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * std::pow(v[i], deg);
        EXPECT_NEAR(s, 1.0 / (deg + 1), 1e-14);
    }
}

TEST(KernelTable, HatWeightsMatchPointwiseKernel) {
    ModelParams p;
    p.delta = 0.5;
    const Grid1D g = small_grid();
    for (auto kind : {k::KernelKind::H, k::KernelKind::H1, k::KernelKind::K_delta, k::KernelKind::H_fundamental}) {
        const KernelTable table(kind, p, g);
        for (int m : {1, 4, 10}) {
            const auto w = table.hat_weights(m);
            for (int qi : {0, 1, 3, 7}) {
                const double ref = hat_reference(kind, qi, g.dx(), g.t(m), p);
                EXPECT_NEAR(w[qi], ref, 1e-9 * std::max(1.0, std::abs(ref)))
                    << k::to_string(kind) << " m = " << m << " q = " << qi;
            }
        }
    }
}

TEST(KernelTable, NodeValuesMatchPointwiseKernel) {
    ModelParams p;
    p.delta = 0.5;
    const Grid1D g = small_grid();
    for (auto kind : {k::KernelKind::H, k::KernelKind::K_eps, k::KernelKind::K_delta}) {
        const KernelTable table(kind, p, g, {.hat_weights = false, .node_values = true});
        for (int n : {1, 5, 10}) {
            for (int i : {0, 30, 50, 53, 100}) {
                const double ref = kernel_value(kind, g.x(i), g.t(n), p);
                EXPECT_NEAR(table.node_value(n, i), ref, 1e-10 * std::max(1.0, std::abs(ref)))
                    << k::to_string(kind) << " n = " << n << " i = " << i;
            }
        }
    }
}

TEST(KernelTable, MomentsMatchAdaptiveIntegrals) {
    ModelParams p;
    p.delta = 0.5;
    const Grid1D g = small_grid();
    const KernelTable table(k::KernelKind::H, p, g, {.hat_weights = false, .time_moments = true});
    const double dt = g.dt();
    for (int kk : {0, 3, 9}) {
        const double t0 = g.t(kk);
        const double t1 = g.t(kk + 1);
        for (int i : {50, 52, 60}) {
            const double x = g.x(i);
            auto fa = [&](double tau) { return kernel_value(k::KernelKind::H, x, tau, p) * (t1 - tau) / dt; };
            auto fb = [&](double tau) { return kernel_value(k::KernelKind::H, x, tau, p) * (tau - t0) / dt; };
            const double ra = q::integrate_sqrt_lower(fa, t0, t1, {1e-12, 1e-10}).value;
            const double rb = q::integrate_sqrt_lower(fb, t0, t1, {1e-12, 1e-10}).value;
            EXPECT_NEAR(table.moment_a(kk, i), ra, 1e-9) << "k = " << kk << " i = " << i;
            EXPECT_NEAR(table.moment_b(kk, i), rb, 1e-9) << "k = " << kk << " i = " << i;
        }
    }
}

TEST(KernelTable, FundamentalMassMatchesMassOde) {
    const ModelParams p;
    const Grid1D g = small_grid();
    const KernelTable table(k::KernelKind::H_fundamental, p, g);
    for (int m = 1; m <= g.nt; ++m) {
        EXPECT_NEAR(table.mass(m), oracle::mass_ode(p, g.t(m)), 1e-9) << "m = " << m;
    }
    EXPECT_EQ(table.mass(0), 1.0);
}

TEST(KernelTable, H1MassIsSpatialIntegral) {
    const ModelParams p;
    const Grid1D g = small_grid();
    const KernelTable table(k::KernelKind::H1, p, g);
    auto f = [&](double x) { return kernel_value(k::KernelKind::H1, x, 0.5, p); };
    const double ref = 2.0 * q::integrate_panels(f, {0.0, 1.0, 3.0, 8.0, 20.0}, kRef).value;
    EXPECT_NEAR(table.mass(5), ref, 1e-9);
}

TEST(KernelTable, ApplyHatLagZeroIsScaledIdentity) {
    const ModelParams p;
    const Grid1D g = small_grid();
    const KernelTable table(k::KernelKind::K_delta, p, g);
    EXPECT_EQ(table.alpha(), 0.0);
    std::vector<double> f(g.nx, 1.0), out(g.nx, 5.0);
    table.apply_hat(0, f, out);
    for (double v : out) EXPECT_EQ(v, 0.0);
}

TEST(KernelTable, RejectsBadLag) {
    const ModelParams p;
    const Grid1D g = small_grid();
    const KernelTable table(k::KernelKind::H1, p, g);
    EXPECT_THROW(table.hat_weights(0), fhr::DomainError);
    EXPECT_THROW(table.hat_weights(g.nt + 1), fhr::DomainError);
    EXPECT_THROW(table.node_value(1, 0), fhr::Error);
    std::vector<double> shortf(3), out(g.nx);
    EXPECT_THROW(table.apply_hat(1, shortf, out), fhr::ShapeError);
}
