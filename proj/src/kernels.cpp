#include "fhr/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fhr/errors.hpp"
#include "fhr/specfun.hpp"

namespace fhr::kernels {

namespace {

constexpr double kPi = std::numbers::pi;

void require_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("kernel time must be positive and finite");
}

// Integrals over (0, t) whose integrand may carry a 1/sqrt(y) factor at y = 0 (the heat
// kernel at x = 0). Everything else in the kernel integrands is bounded and smooth.
quad::Estimate integrate_memory(quad::Integrand g, double t, quad::Tolerance tol) {
    return quad::integrate_sqrt_lower(g, 0.0, t, tol);
}

quad::Tolerance inner(quad::Tolerance tol) { return tol.scaled(0.1); }

// The inner integrals of the resolvent weights have entire integrands of modest size.
constexpr quad::Tolerance kWeightTolerance{1e-14, 1e-12};

double growth_allowance(double s, double mu) { return std::min(0.1, 0.5 * (s + mu)); }

// Envelope of e^{-mu t} sum_p c_p t^p on t >= 1, recast as M e^{gamma t}.
quad::DecayEnvelope envelope_from_powers(double s, double mu, const double (&coef)[4]) {
    if (!(s + mu > 0.0)) throw DivergenceError("Laplace frequency outside the convergence half-plane");
    const double kappa = growth_allowance(s, mu);
    constexpr double powers[4] = {0.0, 0.5, 1.0, 1.5};
    double m = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double pw = powers[i];
        const double peak = pw == 0.0 ? 1.0 : std::pow(pw / (std::numbers::e * kappa), pw);
        m += coef[i] * peak;
    }
    return {m, kappa - mu, 1.0};
}

double decay_floor(const ModelParams& p) { return -abscissa(p); }

}  // namespace

double phi(double x, double t, const ModelParams& p) {
    require_time(t);
    const double dt = p.D * t;
    return std::exp(-x * x / (4.0 * dt) - p.a * t) / (2.0 * std::sqrt(kPi * dt));
}

double psi_closed(double rate, double decay, double y, double t) {
    if (rate == 0.0) return 0.0;
    const double gap = std::max(t - y, 0.0);
    const double z = 2.0 * std::sqrt(rate * y * gap);
    return rate * y * std::exp(-decay * gap) * 2.0 * specfun::bessel_j1_over_z(z);
}

double j0_memory(double rate, double decay, double y, double t) {
    const double gap = std::max(t - y, 0.0);
    return std::exp(-decay * gap) * specfun::bessel_j0(2.0 * std::sqrt(rate * y * gap));
}

double psi_eps(double y, double t, const ModelParams& p) {
    if (!(y > 0.0 && y < t)) throw DomainError("psi_eps requires 0 < y < t");
    return psi_closed(p.eps, p.eps_beta(), y, t);
}

double psi_delta(double y, double t, const ModelParams& p) {
    if (!(y > 0.0 && y < t)) throw DomainError("psi_delta requires 0 < y < t");
    return psi_closed(p.delta, p.delta_d(), y, t);
}

quad::Estimate estimate_H1(double x, double t, const ModelParams& p, quad::Tolerance tol) {
    require_time(t);
    if (p.eps == 0.0) return {phi(x, t, p), 0.0, 1};
    auto g = [&](double y) { return phi(x, y, p) * psi_closed(p.eps, p.eps_beta(), y, t); };
    quad::Estimate mem = integrate_memory(g, t, tol);
    mem.value = phi(x, t, p) - mem.value;
    return mem;
}

quad::Estimate estimate_H2(double x, double t, const ModelParams& p, quad::Tolerance tol) {
    require_time(t);
    if (p.delta == 0.0) return {0.0, 0.0, 0};
    double inner_err = 0.0;
    int evaluations = 0;
    auto g = [&](double y) {
        const double w = psi_closed(p.delta, p.delta_d(), y, t);
        if (w == 0.0) return 0.0;
        const quad::Estimate h1 = estimate_H1(x, y, p, inner(tol));
        evaluations += h1.evaluations;
        inner_err = std::max(inner_err, std::abs(w) * h1.error);
        return h1.value * w;
    };
    quad::Estimate out = integrate_memory(g, t, tol);
    out.error += t * inner_err;
    out.evaluations += evaluations;
    return out;
}

quad::Estimate estimate_K_eps(double x, double t, const ModelParams& p, quad::Tolerance tol) {
    require_time(t);
    auto g = [&](double y) { return phi(x, y, p) * j0_memory(p.eps, p.eps_beta(), y, t); };
    return integrate_memory(g, t, tol);
}

quad::Estimate estimate_K_delta(double x, double t, const ModelParams& p, quad::Tolerance tol) {
    require_time(t);
    double inner_err = 0.0;
    int evaluations = 0;
    auto g = [&](double y) {
        const double w = j0_memory(p.delta, p.delta_d(), y, t);
        const quad::Estimate h1 = estimate_H1(x, y, p, inner(tol));
        evaluations += h1.evaluations;
        inner_err = std::max(inner_err, std::abs(w) * h1.error);
        return h1.value * w;
    };
    quad::Estimate out = integrate_memory(g, t, tol);
    out.error += t * inner_err;
    out.evaluations += evaluations;
    return out;
}

double eval_H1(double x, double t, const ModelParams& p, quad::Tolerance tol) {
    return estimate_H1(x, t, p, tol).value;
}
double eval_H2(double x, double t, const ModelParams& p, quad::Tolerance tol) {
    return estimate_H2(x, t, p, tol).value;
}
double eval_K_eps(double x, double t, const ModelParams& p, quad::Tolerance tol) {
    return estimate_K_eps(x, t, p, tol).value;
}
double eval_K_delta(double x, double t, const ModelParams& p, quad::Tolerance tol) {
    return estimate_K_delta(x, t, p, tol).value;
}

KernelSample eval_H(double x, double t, const ModelParams& p, quad::Tolerance tol, KernelForm form) {
    const quad::Estimate h1 = estimate_H1(x, t, p, tol);
    KernelSample out;
    out.x = x;
    out.t = t;
    out.h1 = h1.value;
    if (form == KernelForm::literal) {
        const quad::Estimate h2 = estimate_H2(x, t, p, tol);
        out.h2 = h2.value;
        out.err_est = h1.error + h2.error;
    } else {
        const quad::Estimate hf = eval_resolvent(KernelKind::H_fundamental, x, t, p, tol);
        out.h2 = h1.value - hf.value;
        out.err_est = h1.error + hf.error;
    }
    out.h = out.h1 - out.h2;
    return out;
}

KernelSample eval_all(double x, double t, const ModelParams& p, quad::Tolerance tol, KernelForm form) {
    KernelSample out = eval_H(x, t, p, tol, form);
    const quad::Estimate ke = estimate_K_eps(x, t, p, tol);
    const quad::Estimate kd = estimate_K_delta(x, t, p, tol);
    out.k_eps = ke.value;
    out.k_delta = kd.value;
    out.err_est += ke.error + kd.error;
    return out;
}

const char* to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::H: return "H";
        case KernelKind::H_fundamental: return "H_fundamental";
        case KernelKind::H1: return "H1";
        case KernelKind::K_eps: return "K_eps";
        case KernelKind::K_delta: return "K_delta";
    }
    return "?";
}

KernelKind kind_for(KernelForm form) {
    return form == KernelForm::literal ? KernelKind::H : KernelKind::H_fundamental;
}

double resolvent_alpha(KernelKind kind) {
    switch (kind) {
        case KernelKind::H:
        case KernelKind::H_fundamental:
        case KernelKind::H1: return 1.0;
        case KernelKind::K_eps:
        case KernelKind::K_delta: return 0.0;
    }
    return 0.0;
}

double resolvent_weight(KernelKind kind, double u, double t, const ModelParams& p) {
    const double e = p.eps;
    const double eb = p.eps_beta();
    const double dl = p.delta;
    const double dd = p.delta_d();
    switch (kind) {
        case KernelKind::H1: return -psi_closed(e, eb, u, t);
        case KernelKind::K_eps: return j0_memory(e, eb, u, t);
        case KernelKind::H: {
            double q = psi_closed(e, eb, u, t) + psi_closed(dl, dd, u, t);
            if (e != 0.0 && dl != 0.0 && t > u) {
                auto g = [&](double y) { return psi_closed(e, eb, u, y) * psi_closed(dl, dd, y, t); };
                q -= quad::try_integrate_smooth(g, u, t, kWeightTolerance).value;
            }
            return -q;
        }
        case KernelKind::H_fundamental: {
            double q = psi_closed(e, eb, u, t) + psi_closed(dl, dd, u, t);
            if (e != 0.0 && dl != 0.0 && t > u) {
                // Both lag kernels anchored at u: int_0^{t-u} psi_e(u, u+r) psi_d(u, t-r) dr.
                auto g = [&](double lag) {
                    return psi_closed(e, eb, u, u + lag) * psi_closed(dl, dd, u, t - lag);
                };
                q -= quad::try_integrate_smooth(g, 0.0, t - u, kWeightTolerance).value;
            }
            return -q;
        }
        case KernelKind::K_delta: {
            double w = j0_memory(dl, dd, u, t);
            if (e != 0.0 && t > u) {
                auto g = [&](double y) { return psi_closed(e, eb, u, y) * j0_memory(dl, dd, y, t); };
                w -= quad::try_integrate_smooth(g, u, t, kWeightTolerance).value;
            }
            return w;
        }
    }
    return 0.0;
}

quad::Estimate eval_resolvent(KernelKind kind, double x, double t, const ModelParams& p, quad::Tolerance tol) {
    require_time(t);
    auto g = [&](double u) { return phi(x, u, p) * resolvent_weight(kind, u, t, p); };
    quad::Estimate mem = integrate_memory(g, t, tol);
    mem.value += resolvent_alpha(kind) * phi(x, t, p);
    return mem;
}

double abscissa(const ModelParams& p) {
    double edge = -p.a;
    if (p.eps != 0.0) edge = std::max(edge, -p.eps_beta());
    if (p.delta != 0.0) edge = std::max(edge, -p.delta_d());
    return edge;
}

ComplexFreq::ComplexFreq(double s, const ModelParams& p) : s_(s) {
    if (!std::isfinite(s) || !(s > abscissa(p))) {
        throw DomainError("Laplace frequency lies outside the convergence half-plane");
    }
}

double r(double s, const ModelParams& p) {
    const ComplexFreq freq(s, p);
    double r2 = s + p.a;
    if (p.eps != 0.0) r2 += p.eps / (s + p.eps_beta());
    if (!(r2 > 0.0)) throw DomainError("r^2 is not positive at this frequency");
    return std::sqrt(r2);
}

double sigma(double s, const ModelParams& p) {
    const ComplexFreq freq(s, p);
    double s2 = s + p.a;
    if (p.eps != 0.0) s2 += p.eps / (s + p.eps_beta());
    if (p.delta != 0.0) s2 += p.delta / (s + p.delta_d());
    if (!(s2 > 0.0)) throw DomainError("sigma^2 is not positive at this frequency");
    return std::sqrt(s2);
}

double hat_H(double x, double s, const ModelParams& p) {
    const double sg = sigma(s, p);
    const double sd = std::sqrt(p.D);
    return std::exp(-std::abs(x) * sg / sd) / (2.0 * sg * sd);
}

double hat_H1(double x, double s, const ModelParams& p) {
    const double rr = r(s, p);
    const double sd = std::sqrt(p.D);
    return std::exp(-std::abs(x) * rr / sd) / (2.0 * rr * sd);
}

double hat_mass(double s, const ModelParams& p) {
    const double sg = sigma(s, p);
    return 1.0 / (sg * sg);
}

quad::DecayEnvelope envelope_H(double s, const ModelParams& p) {
    const double c0 = 1.0 / (2.0 * std::sqrt(kPi * p.D));
    const double ce = std::sqrt(p.eps / (kPi * p.D));
    const double cd = std::sqrt(p.delta / (kPi * p.D));
    const double ced = 2.0 * std::sqrt(p.eps * p.delta / (kPi * p.D));
    const double coef[4] = {c0, ce + cd, 0.0, ced};
    return envelope_from_powers(s, decay_floor(p), coef);
}

quad::DecayEnvelope envelope_H1(double s, const ModelParams& p) {
    const double c0 = 1.0 / (2.0 * std::sqrt(kPi * p.D));
    const double ce = std::sqrt(p.eps / (kPi * p.D));
    const double coef[4] = {c0, ce, 0.0, 0.0};
    double mu = p.a;
    if (p.eps != 0.0) mu = std::min(mu, p.eps_beta());
    return envelope_from_powers(s, mu, coef);
}

double H2_bound(double t, const ModelParams& p) {
    return std::sqrt(p.delta * t / (4.0 * kPi * p.D)) + 2.0 * std::sqrt(p.eps * p.delta / (kPi * p.D)) * t;
}

}  // namespace fhr::kernels
