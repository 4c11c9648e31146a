#pragma once

#include <optional>

#include "fhr/params.hpp"
#include "fhr/quad.hpp"

namespace fhr::kernels {

/// Damped heat kernel exp(-x^2/(4Dt)) / (2 sqrt(pi D t)) * exp(-a t). Requires t > 0.
double phi(double x, double t, const ModelParams& p);

/// Memory kernels sqrt(ey) exp(-b(t-y)) / sqrt(t-y) J1(2 sqrt(e y (t-y))) with (e, b) equal to
/// (eps, beta eps) or (delta, delta d). Require 0 < y < t.
double psi_eps(double y, double t, const ModelParams& p);
double psi_delta(double y, double t, const ModelParams& p);

/// Same family written as e y exp(-b(t-y)) 2 J1(z)/z, which is bounded and smooth on the
/// closed interval 0 <= y <= t. No domain check beyond finiteness.
double psi_closed(double rate, double decay, double y, double t);

/// exp(-b(t-y)) J0(2 sqrt(rate y (t-y))) on 0 <= y <= t.
double j0_memory(double rate, double decay, double y, double t);

/// Which H the H-valued entry points evaluate.
///  literal:     H = H1 - H2 with H2 = int_0^t H1(x,y) psi_delta(y,t) dy, as printed.
///  fundamental: H = phi - int_0^t phi(x,y) Q(y,t) dy with both memory kernels anchored at the
///               same y; its Laplace transform is exp(-|x| sigma/sqrt(D)) / (2 sigma sqrt(D)).
/// The two differ at order eps*delta. The literal transform is hat_H1(x, s + delta/(s + delta d)).
enum class KernelForm { literal, fundamental };

/// All kernel values at one point. k_eps and k_delta are filled only by eval_all.
struct KernelSample {
    double x = 0.0;
    double t = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    double h = 0.0;
    std::optional<double> k_eps;
    std::optional<double> k_delta;
    double err_est = 0.0;
};

/// Default tolerance for pointwise kernel evaluation.
inline constexpr quad::Tolerance kKernelTolerance{1e-10, 1e-9};

quad::Estimate estimate_H1(double x, double t, const ModelParams& p, quad::Tolerance tol = kKernelTolerance);
quad::Estimate estimate_H2(double x, double t, const ModelParams& p, quad::Tolerance tol = kKernelTolerance);
quad::Estimate estimate_K_eps(double x, double t, const ModelParams& p, quad::Tolerance tol = kKernelTolerance);
quad::Estimate estimate_K_delta(double x, double t, const ModelParams& p,
                                quad::Tolerance tol = kKernelTolerance);

double eval_H1(double x, double t, const ModelParams& p, quad::Tolerance tol = kKernelTolerance);
double eval_H2(double x, double t, const ModelParams& p, quad::Tolerance tol = kKernelTolerance);
double eval_K_eps(double x, double t, const ModelParams& p, quad::Tolerance tol = kKernelTolerance);
double eval_K_delta(double x, double t, const ModelParams& p, quad::Tolerance tol = kKernelTolerance);

/// H1, H2 and H = H1 - H2 with the composed error bound. For the fundamental form h2 holds
/// H1 - H so the identity h = h1 - h2 is kept.
KernelSample eval_H(double x, double t, const ModelParams& p, quad::Tolerance tol = kKernelTolerance,
                    KernelForm form = KernelForm::literal);

/// eval_H plus K_eps and K_delta.
KernelSample eval_all(double x, double t, const ModelParams& p, quad::Tolerance tol = kKernelTolerance,
                      KernelForm form = KernelForm::literal);

/// Kernels with an x-independent representation K(x,t) = alpha phi(x,t) + int_0^t phi(x,u) W(u,t) du.
enum class KernelKind { H, H_fundamental, H1, K_eps, K_delta };

const char* to_string(KernelKind kind);
KernelKind kind_for(KernelForm form);

/// alpha in the representation above (1 for the H family, 0 for K_eps and K_delta).
double resolvent_alpha(KernelKind kind);

/// W(u, t) for 0 <= u <= t. Smooth and bounded on the closed triangle.
double resolvent_weight(KernelKind kind, double u, double t, const ModelParams& p);

/// Pointwise evaluation through the representation above (an independent route to the
/// nested-quadrature evaluators, and the only one for KernelKind::H_fundamental).
quad::Estimate eval_resolvent(KernelKind kind, double x, double t, const ModelParams& p,
                              quad::Tolerance tol = kKernelTolerance);

/// Real Laplace frequency, checked against the convergence half-plane on construction.
class ComplexFreq {
public:
    ComplexFreq(double s, const ModelParams& p);
    double s() const { return s_; }

private:
    double s_;
};

/// Left edge of the convergence half-plane: max(-a, -beta eps, -delta d), where a rate
/// term is dropped when its coupling constant vanishes.
double abscissa(const ModelParams& p);

/// sigma^2 = s + a + delta/(s + delta d) + eps/(s + beta eps); positive root.
double sigma(double s, const ModelParams& p);
/// r^2 = s + a + eps/(s + beta eps); positive root.
double r(double s, const ModelParams& p);

/// exp(-|x| sigma / sqrt(D)) / (2 sigma sqrt(D)).
double hat_H(double x, double s, const ModelParams& p);
/// exp(-|x| r / sqrt(D)) / (2 r sqrt(D)).
double hat_H1(double x, double s, const ModelParams& p);
/// Transform of the kernel mass, 1 / sigma^2.
double hat_mass(double s, const ModelParams& p);

/// Exponential envelopes |H(x,t)| <= M e^{gamma t} (and for H1) valid for t >= 1, built from
/// the bounds |J1| <= 1, |J0| <= 1 with an allowance that keeps gamma below s.
quad::DecayEnvelope envelope_H(double s, const ModelParams& p);
quad::DecayEnvelope envelope_H1(double s, const ModelParams& p);

/// Upper bound on |H2(x,t)| valid for all x: sqrt(delta t/(4 pi D)) + 2 sqrt(eps delta/(pi D)) t.
double H2_bound(double t, const ModelParams& p);

}  // namespace fhr::kernels
