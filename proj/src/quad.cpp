#include "fhr/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fhr/errors.hpp"

namespace fhr::quad {

namespace {

// Kronrod abscissae and weights for the 21-point rule, and the embedded 10-point
// Gauss weights (QUADPACK dqk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Segment {
    double a;
    double b;
    double value;
    double error;
};

Segment gk21(Integrand f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resg = 0.0;
    double resk = kWgk[10] * fc;
    double resabs = std::abs(resk);
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double sum = f1[j] + f2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double h = std::abs(half);
    const double value = resk * half;
    resabs *= h;
    resasc *= h;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    if (!std::isfinite(value)) throw DomainError("integrand returned a non-finite value");
    return {a, b, value, err};
}

bool error_less(const Segment& x, const Segment& y) { return x.error < y.error; }

Estimate adapt(Integrand f, const std::vector<double>& breaks, Tolerance tol, bool throw_on_failure = true) {
    if (!(tol.abs_tol > 0.0) || !(tol.rel_tol > 0.0)) throw DomainError("tolerances must be positive");
    std::vector<Segment> heap;
    heap.reserve(64);
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] == breaks[i]) continue;
        heap.push_back(gk21(f, breaks[i], breaks[i + 1]));
        total += heap.back().value;
        total_err += heap.back().error;
    }
    std::make_heap(heap.begin(), heap.end(), error_less);
    int evaluations = 21 * static_cast<int>(heap.size());

    int splits = 0;
    while (total_err > std::max(tol.abs_tol, tol.rel_tol * std::abs(total))) {
        if (heap.empty()) break;
        std::pop_heap(heap.begin(), heap.end(), error_less);
        const Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        const bool exhausted = splits >= kMaxSubdivisions ||
                               std::abs(worst.b - worst.a) <=
                                   100.0 * kEps * (std::abs(worst.a) + std::abs(worst.b) + kTiny);
        if (exhausted) {
            if (!throw_on_failure) return {total, total_err, evaluations, false};
            std::ostringstream msg;
            msg << "adaptive quadrature did not converge: estimate " << total << ", error bound "
                << total_err << " after " << splits << " subdivisions";
            throw AccuracyError(msg.str(), total, total_err);
        }
        const Segment left = gk21(f, worst.a, mid);
        const Segment right = gk21(f, mid, worst.b);
        evaluations += 42;
        ++splits;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), error_less);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), error_less);
        if (splits % 64 == 0) {
            // Re-sum to shed accumulated cancellation in the running totals.
            total = 0.0;
            total_err = 0.0;
            for (const Segment& s : heap) {
                total += s.value;
                total_err += s.error;
            }
        }
    }
    return {total, total_err, evaluations};
}

void check_interval(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integration limits must be finite");
}

}  // namespace

void QuadSpec::validate() const {
    if (std::isnan(lower) || std::isnan(upper) || !std::isfinite(lower)) {
        throw DomainError("QuadSpec: lower limit must be finite");
    }
    if (!(lower < upper)) throw DomainError("QuadSpec: lower must be below upper");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("QuadSpec: tolerances must be positive");
    if (singular_upper_endpoint && !std::isfinite(upper)) {
        throw DomainError("QuadSpec: singular endpoint flag requires a finite upper limit");
    }
}

Estimate integrate_smooth(Integrand f, double a, double b, Tolerance tol) {
    check_interval(a, b);
    if (a == b) return {};
    if (a > b) {
        Estimate e = adapt(f, {b, a}, tol);
        e.value = -e.value;
        return e;
    }
    return adapt(f, {a, b}, tol);
}

Estimate try_integrate_smooth(Integrand f, double a, double b, Tolerance tol) {
    check_interval(a, b);
    if (a == b) return {};
    if (a > b) {
        Estimate e = adapt(f, {b, a}, tol, false);
        e.value = -e.value;
        return e;
    }
    return adapt(f, {a, b}, tol, false);
}

Estimate integrate_panels(Integrand f, const std::vector<double>& breakpoints, Tolerance tol) {
    if (breakpoints.size() < 2) throw DomainError("integrate_panels needs at least two breakpoints");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        check_interval(breakpoints[i], breakpoints[i]);
        if (i > 0 && breakpoints[i] < breakpoints[i - 1]) throw DomainError("breakpoints must be sorted");
    }
    return adapt(f, breakpoints, tol);
}

Estimate integrate_singular_sqrt(Integrand f, double lower, double t, Tolerance tol) {
    check_interval(lower, t);
    if (!(t > lower)) throw DomainError("integrate_singular_sqrt requires t > lower");
    // y = t - s^2, dy / sqrt(t - y) = 2 ds.
    auto g = [&](double s) { return 2.0 * f(t - s * s); };
    return adapt(g, {0.0, std::sqrt(t - lower)}, tol);
}

Estimate integrate_sqrt_lower(Integrand g, double a, double b, Tolerance tol) {
    check_interval(a, b);
    if (!(b > a)) throw DomainError("integrate_sqrt_lower requires b > a");
    auto h = [&](double s) { return s == 0.0 ? 0.0 : 2.0 * s * g(a + s * s); };
    return adapt(h, {0.0, std::sqrt(b - a)}, tol);
}

Estimate integrate(Integrand f, const QuadSpec& spec) {
    spec.validate();
    if (!std::isfinite(spec.upper)) {
        throw DomainError("QuadSpec: semi-infinite ranges go through integrate_laplace");
    }
    if (spec.singular_upper_endpoint) return integrate_singular_sqrt(f, spec.lower, spec.upper, spec.tolerance());
    return integrate_smooth(f, spec.lower, spec.upper, spec.tolerance());
}

double laplace_horizon(double s, const DecayEnvelope& env, double abs_tol) {
    const double rate = s - env.gamma;
    if (!(rate > 0.0)) throw DivergenceError("Laplace integral diverges: s must exceed the envelope growth rate");
    if (!(abs_tol > 0.0)) throw DomainError("abs_tol must be positive");
    if (!(env.M > 0.0)) throw DomainError("decay envelope constant must be positive");
    // Tail bound: int_T^inf M e^{-rate t} dt = M e^{-rate T} / rate < abs_tol / 2.
    const double horizon = std::log(2.0 * env.M / (rate * abs_tol)) / rate;
    return std::max(horizon, env.valid_from);
}

Estimate integrate_laplace(Integrand f, double s, const DecayEnvelope& env, Tolerance tol, double max_horizon) {
    const double horizon = laplace_horizon(s, env, tol.abs_tol);
    if (horizon > max_horizon) {
        throw AccuracyError("Laplace truncation horizon exceeds the configured maximum", 0.0,
                            std::numeric_limits<double>::infinity());
    }
    if (!(horizon > 0.0)) return {0.0, tol.abs_tol / 2};
    auto g = [&](double t) { return std::exp(-s * t) * f(t); };
    // Geometric breakpoints resolve the short-time structure of heat-type kernels.
    std::vector<double> breaks{0.0};
    for (double b = std::min(1e-3, horizon / 2); b < horizon; b *= 4.0) breaks.push_back(b);
    breaks.push_back(horizon);
    Estimate e = adapt(g, breaks, tol.scaled(0.5));
    e.error += tol.abs_tol / 2;
    return e;
}

GaussRule gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre requires n >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            const double pn = n == 1 ? x : p1;
            const double pn1 = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pn1) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        if (n == 1) {
            rule.nodes[0] = 0.0;
            rule.weights[0] = 2.0;
            break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace fhr::quad
