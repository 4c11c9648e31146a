#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fhr/errors.hpp"
#include "fhr/kernels.hpp"
#include "fhr/specfun.hpp"

namespace k = fhr::kernels;
namespace q = fhr::quad;
using fhr::ModelParams;
using std::numbers::pi;

namespace {

ModelParams defaults() { return ModelParams{}; }

ModelParams skewed() {
    ModelParams p;
    p.delta = 0.5;
    return p;
}

constexpr q::Tolerance kTight{1e-13, 1e-12};

// Reference time convolution int_0^t exp(-rate (t - tau)) K(tau) dtau by adaptive quadrature.
template <class F>
double exp_conv(double rate, double t, F kernel) {
    auto g = [&](double tau) { return std::exp(-rate * (t - tau)) * kernel(tau); };
    return q::integrate_sqrt_lower(g, 0.0, t, {1e-11, 1e-10}).value;
}

}  // namespace

TEST(Kernels, PhiExamples) {
    ModelParams p;
    p.a = 0.0;
    EXPECT_NEAR(k::phi(0.0, 1.0, p), 1.0 / (2.0 * std::sqrt(pi)), 1e-15);
    EXPECT_NEAR(k::phi(1.0, 0.25, p), std::exp(-1.0) / std::sqrt(pi), 1e-15);
    const double mass = q::integrate_smooth([&](double x) { return k::phi(x, 0.7, p); }, -30.0, 30.0).value;
    EXPECT_NEAR(mass, 1.0, 1e-10);
    EXPECT_EQ(k::phi(0.3, 0.5, p), k::phi(-0.3, 0.5, p));
    EXPECT_THROW(k::phi(0.0, 0.0, p), fhr::DomainError);
}

TEST(Kernels, PsiExamples) {
    const ModelParams p = defaults();
    EXPECT_NEAR(k::psi_eps(0.5, 1.0, p), std::exp(-0.5) * fhr::specfun::bessel_j1(1.0), 1e-15);
    ModelParams off = p;
    off.eps = 0.0;
    EXPECT_EQ(k::psi_eps(0.4, 1.0, off), 0.0);
    EXPECT_THROW(k::psi_eps(1.0, 1.0, p), fhr::DomainError);
    EXPECT_THROW(k::psi_delta(0.0, 1.0, p), fhr::DomainError);
    // The J1 factor cancels the 1/sqrt(t-y): psi tends to eps*y at the diagonal.
    const double y = 0.6;
    EXPECT_NEAR(k::psi_eps(y, y + 1e-12, p), p.eps * y, 1e-10);
    EXPECT_NEAR(k::psi_closed(p.eps, p.eps_beta(), y, y), p.eps * y, 1e-15);
}

TEST(Kernels, H1Degenerations) {
    ModelParams p = defaults();
    p.eps = 0.0;
    EXPECT_EQ(k::eval_H1(0.7, 0.9, p), k::phi(0.7, 0.9, p));
    const ModelParams d = defaults();
    for (double x : {0.0, 0.3, 1.7}) {
        for (double t : {0.05, 0.5, 2.0}) {
            EXPECT_EQ(k::eval_H1(x, t, d), k::eval_H1(-x, t, d));
            const k::KernelSample s = k::eval_all(x, t, d);
            const k::KernelSample m = k::eval_all(-x, t, d);
            EXPECT_EQ(s.h, m.h);
            EXPECT_EQ(*s.k_eps, *m.k_eps);
            EXPECT_EQ(*s.k_delta, *m.k_delta);
            EXPECT_EQ(s.h, s.h1 - s.h2);
            EXPECT_GE(s.err_est, 0.0);
        }
    }
}

TEST(Kernels, H1LaplaceTransform) {
    const ModelParams p = defaults();
    const double x = 1.0;
    const double s = 1.0;
    const q::Estimate e = q::integrate_laplace([&](double t) { return k::eval_H1(x, t, p); }, s, k::envelope_H1(s, p),
                                               {1e-10, 1e-9});
    EXPECT_LT(std::abs(e.value - k::hat_H1(x, s, p)) / k::hat_H1(x, s, p), 1e-6);
}

TEST(Kernels, H2Degeneration) {
    ModelParams p = defaults();
    p.delta = 0.0;
    EXPECT_EQ(k::eval_H2(0.4, 1.0, p), 0.0);
    const k::KernelSample s = k::eval_H(0.4, 1.0, p);
    EXPECT_EQ(s.h, s.h1);
}

TEST(Kernels, SmallTimeLocalization) {
    const ModelParams p{1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 0.0};
    EXPECT_LT(std::abs(k::eval_H(1.0, 1e-4, p).h), 1e-8);
}

TEST(Kernels, KEpsDegenerationAndIdentity) {
    ModelParams off = defaults();
    off.eps = 0.0;
    const double x = 0.5;
    const double t = 1.0;
    const double direct =
        q::integrate_sqrt_lower([&](double y) { return k::phi(x, y, off); }, 0.0, t, {1e-12, 1e-12}).value;
    EXPECT_NEAR(k::eval_K_eps(x, t, off), direct, 1e-10);

    const ModelParams p = defaults();
    const double conv = exp_conv(p.eps_beta(), t, [&](double tau) { return k::eval_H1(x, tau, p, {1e-12, 1e-11}); });
    EXPECT_NEAR(k::eval_K_eps(x, t, p), conv, 1e-6);
}

TEST(Kernels, H1OperatorIdentity) {
    const ModelParams p = defaults();
    const double hx = 1e-3;
    const double ht = 1e-3;
    for (auto [x, t] : {std::pair{0.5, 0.6}, std::pair{1.2, 1.0}, std::pair{0.2, 0.3}}) {
        auto H1 = [&](double xx, double tt) { return k::eval_H1(xx, tt, p, kTight); };
        const double ht_d = (H1(x, t + ht) - H1(x, t - ht)) / (2 * ht);
        const double hxx = (H1(x + hx, t) - 2 * H1(x, t) + H1(x - hx, t)) / (hx * hx);
        const double res = ht_d + p.a * H1(x, t) - p.D * hxx + p.eps * k::eval_K_eps(x, t, p, kTight);
        EXPECT_LT(std::abs(res), 1e-4) << x << " " << t;
    }
}

TEST(Kernels, KDeltaDegenerationAndIdentities) {
    const double x = 0.5;
    const double t = 1.0;
    ModelParams off = defaults();
    off.delta = 0.0;
    const double direct =
        q::integrate_sqrt_lower([&](double y) { return k::eval_H1(x, y, off, {1e-12, 1e-11}); }, 0.0, t, {1e-11, 1e-10})
            .value;
    EXPECT_NEAR(k::eval_K_delta(x, t, off), direct, 1e-9);

    const ModelParams p = skewed();
    auto H = [&](double tau) { return k::eval_H(x, tau, p, {1e-12, 1e-11}).h; };
    const double kd = k::eval_K_delta(x, t, p);
    EXPECT_NEAR(exp_conv(p.delta_d(), t, H), kd, 1e-6);

    const double lhs = exp_conv(p.eps_beta(), t, H);
    const double kd_conv =
        exp_conv(p.eps_beta(), t, [&](double tau) { return k::eval_K_delta(x, tau, p, {1e-12, 1e-11}); });
    EXPECT_NEAR(lhs, kd + (p.delta_d() - p.eps_beta()) * kd_conv, 1e-6);
}

TEST(Kernels, SigmaAndR) {
    ModelParams p = defaults();
    EXPECT_NEAR(k::sigma(1.0, p), std::sqrt(2.5), 1e-15);
    ModelParams heat = p;
    heat.eps = 0.0;
    heat.delta = 0.0;
    EXPECT_NEAR(k::sigma(2.0, heat), std::sqrt(2.5), 1e-15);
    ModelParams nodelta = p;
    nodelta.delta = 0.0;
    EXPECT_EQ(k::sigma(1.5, nodelta), k::r(1.5, nodelta));
    EXPECT_THROW(k::sigma(-0.6, p), fhr::DomainError);
    EXPECT_THROW(k::ComplexFreq(-0.5, p), fhr::DomainError);
    EXPECT_NO_THROW(k::ComplexFreq(-0.49, p));
}

TEST(Kernels, HatH) {
    const ModelParams p = defaults();
    EXPECT_NEAR(k::hat_H(0.0, 1.0, p), 1.0 / (2.0 * std::sqrt(p.D) * k::sigma(1.0, p)), 1e-15);
    ModelParams heat = p;
    heat.eps = heat.delta = 0.0;
    const double s = 1.0;
    EXPECT_NEAR(k::hat_H(1.3, s, heat),
                std::exp(-1.3 * std::sqrt((s + heat.a) / heat.D)) / (2.0 * std::sqrt(heat.D * (s + heat.a))), 1e-15);
    EXPECT_NEAR(k::hat_mass(2.0, p), 1.0 / (k::sigma(2.0, p) * k::sigma(2.0, p)), 1e-15);
}

TEST(Kernels, H2ProofBound) {
    const ModelParams p = defaults();
    for (double x : {0.5, 1.0, 2.0, -0.8}) {
        for (double t : {0.1, 0.5, 1.0, 2.0, 3.0}) {
            EXPECT_LE(std::abs(k::eval_H2(x, t, p)), k::H2_bound(t, p)) << x << " " << t;
        }
    }
}

TEST(Kernels, LiteralTransformIsShiftedH1Transform) {
    const ModelParams p = defaults();
    for (auto [x, s] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}}) {
        const q::Estimate e = q::integrate_laplace([&](double t) { return k::eval_H(x, t, p).h; }, s,
                                                   k::envelope_H(s, p), {1e-10, 1e-9});
        const double shifted = s + p.delta / (s + p.delta_d());
        EXPECT_LT(std::abs(e.value / k::hat_H1(x, shifted, p) - 1.0), 1e-6) << x << " " << s;
    }
}

TEST(Kernels, FundamentalFormTransform) {
    const ModelParams p = defaults();
    for (auto [x, s] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}}) {
        const q::Estimate e = q::integrate_laplace(
            [&](double t) { return k::eval_H(x, t, p, k::kKernelTolerance, k::KernelForm::fundamental).h; }, s,
            k::envelope_H(s, p), {1e-10, 1e-9});
        EXPECT_LT(std::abs(e.value / k::hat_H(x, s, p) - 1.0), 1e-6) << x << " " << s;
    }
}

TEST(Kernels, ResolventRouteMatchesNestedQuadrature) {
    const ModelParams p = skewed();
    for (double x : {0.0, 0.4, 1.5}) {
        for (double t : {0.2, 1.0, 2.5}) {
            EXPECT_NEAR(k::eval_resolvent(k::KernelKind::H, x, t, p).value, k::eval_H(x, t, p).h, 1e-9);
            EXPECT_NEAR(k::eval_resolvent(k::KernelKind::H1, x, t, p).value, k::eval_H1(x, t, p), 1e-9);
            EXPECT_NEAR(k::eval_resolvent(k::KernelKind::K_eps, x, t, p).value, k::eval_K_eps(x, t, p), 1e-9);
            EXPECT_NEAR(k::eval_resolvent(k::KernelKind::K_delta, x, t, p).value, k::eval_K_delta(x, t, p), 1e-9);
        }
    }
}
