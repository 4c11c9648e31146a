#include "fhr/waves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fhr/errors.hpp"
#include "fhr/quad.hpp"
#include "fhr/solver_integral.hpp"

namespace fhr::waves {

void WaveParams::validate() const {
    p.validate();
    const double eb = p.eps_beta();
    const double dd = p.delta_d();
    if (std::abs(eb - dd) > 1e-12 * std::max(1.0, std::abs(eb))) {
        throw ConfigError("wave.eps_beta", "traveling waves need eps beta = delta d");
    }
    if (k == 0.0 || !std::isfinite(k)) throw DomainError("wave: k must be non-zero");
    if (C == 0.0 || !std::isfinite(C)) throw DomainError("wave: C must be non-zero");
    if (sign_A != 1.0 && sign_A != -1.0) throw ConfigError("wave.sign_A", "must be +1 or -1");
    if (!std::isfinite(z0)) throw ConfigError("wave.z0", "must be finite");
}

double WaveSolution::amplitude() const { return std::abs(A) * std::sqrt(y_ric); }

double riccati_f(double z, double y_ric, double z0) {
    if (!(y_ric > 0.0)) throw DomainError("riccati_f: y_ric must be positive");
    const double s = std::sqrt(y_ric);
    return s * std::tanh(s * (z - z0));
}

double riccati_f_prime(double z, double y_ric, double z0) {
    if (!(y_ric > 0.0)) throw DomainError("riccati_f_prime: y_ric must be positive");
    const double c = std::cosh(std::sqrt(y_ric) * (z - z0));
    return y_ric / (c * c);
}

WaveSolution solve_wave_coefficients(const WaveParams& wp) {
    wp.validate();
    const ModelParams& p = wp.p;
    const double eb = p.eps_beta();
    const double C = wp.C;
    const double k = wp.k;
    WaveSolution ws;
    ws.C = C;
    ws.z0 = wp.z0;
    ws.A = wp.sign_A * std::sqrt(p.D);
    const double A = ws.A;
    ws.b = eb * A / (2.0 * C) - (p.eps + p.delta) / (2.0 * k);
    const double b = ws.b;
    ws.a_implied = 3.0 * b + C * A / (2.0 * p.D) - 1.0;
    const double Dy = 3.0 * b * b + (C / A - 3.0 - k / eb) * b - C / (2.0 * A) - (p.eps + p.delta) / (2.0 * eb) + 1.0;
    if (!(Dy > 0.0)) {
        std::ostringstream msg;
        msg << "no tanh wave: D y_ric = " << Dy << " <= 0 at D = " << p.D;
        throw NoSolutionError(msg.str(), Dy);
    }
    ws.y_ric = Dy / p.D;
    const double y = ws.y_ric;
    const double a = ws.a_implied;
    ws.source_budget = 2.0 * C * p.D * A * y * y + eb * C * A * y - 2.0 * eb * b * b * b + 2.0 * eb * (a + 1.0) * b * b -
                       2.0 * eb * a * b + 6.0 * C * A * y * b * b - 4.0 * C * y * (a + 1.0) * A * b + 2.0 * a * C * A * y -
                       (p.eps + p.delta) * b - k * b * b;
    return ws;
}

double wave_u(double z, const WaveSolution& ws) { return ws.A * riccati_f(z, ws.y_ric, ws.z0) + ws.b; }

std::vector<double> wave_profile(std::span<const double> z, const WaveSolution& ws) {
    std::vector<double> u(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) u[i] = wave_u(z[i], ws);
    return u;
}

WaveDerivatives wave_derivatives(double z, const WaveSolution& ws) {
    const double f = riccati_f(z, ws.y_ric, ws.z0);
    const double y = ws.y_ric;
    const double A = ws.A;
    const double fp = y - f * f;
    return {A * f + ws.b, A * fp, -2.0 * A * f * fp, -2.0 * A * fp * (y - 3.0 * f * f)};
}

OdeResidual wave_residual_ode(const WaveSolution& ws, const WaveParams& wp, std::span<const double> z) {
    if (!(ws.y_ric > 0.0)) throw DomainError("wave_residual_ode: degenerate solution (y_ric <= 0)");
    const ModelParams& p = wp.p;
    const double eb = p.eps_beta();
    const double C = wp.C;
    const double a = ws.a_implied;
    OdeResidual out;
    for (double zz : z) {
        const WaveDerivatives d = wave_derivatives(zz, ws);
        const double u = d.u;
        const double terms[] = {
            p.D * C * d.uzzz,
            (C * C - eb * p.D) * d.uzz,
            -6.0 * C * u * u * d.uz,
            4.0 * C * (a + 1.0) * u * d.uz,
            2.0 * eb * u * u * u,
            wp.k * u * u,
            -C * (2.0 * a + eb) * d.uz,
            -2.0 * eb * (a + 1.0) * u * u,
            2.0 * eb * a * u,
            (p.eps + p.delta) * u,
            ws.source_budget,
        };
        double s = 0.0;
        for (double t : terms) {
            s += t;
            out.scale = std::max(out.scale, std::abs(t));
        }
        out.residual = std::max(out.residual, std::abs(s));
    }
    return out;
}

ModelParams wave_model_params(const WaveSolution& ws, const WaveParams& wp, double h) {
    ModelParams p = wp.p;
    p.a = ws.a_implied;
    p.h = h;
    if (p.eps == 0.0) throw DomainError("wave_model_params: eps = 0 leaves c undetermined");
    p.c = (ws.source_budget + p.delta * h) / p.eps;
    return p;
}

namespace {

// (1/|C|) int_0^inf e^{-|rate/C| r} S(z + sgn(C) r) dr, with panels around the front.
template <class S>
double moving_frame_integral(double z, const WaveSolution& ws, double rate, S source) {
    const double C = ws.C;
    const double mu = std::abs(rate / C);
    if (!(mu > 0.0)) throw DomainError("moving-frame profile needs eps beta > 0");
    const double sg = C > 0.0 ? 1.0 : -1.0;
    const double R = 45.0 / mu;
    const double width = 1.0 / std::sqrt(ws.y_ric);
    std::vector<double> br{0.0, R};
    const double front = sg * (ws.z0 - z);
    for (double o : {-8.0, -2.0, 0.0, 2.0, 8.0}) {
        const double r = front + o * width;
        if (r > 0.0 && r < R) br.push_back(r);
    }
    std::sort(br.begin(), br.end());
    auto f = [&](double r) { return std::exp(-mu * r) * source(z + sg * r); };
    return quad::integrate_panels(f, br, {1e-13, 1e-12}).value / std::abs(C);
}

}  // namespace

double wave_W(double z, const WaveSolution& ws, const ModelParams& p, double k) {
    return moving_frame_integral(z, ws, p.eps_beta(), [&](double s) {
        const double u = wave_u(s, ws);
        return p.eps * p.c + p.eps * u + k * u * u;
    });
}

double wave_Y(double z, const WaveSolution& ws, const ModelParams& p) {
    return moving_frame_integral(z, ws, p.delta_d(), [&](double s) { return -p.delta * (wave_u(s, ws) - p.h); });
}

fd::FDState wave_full_state(const WaveSolution& ws, const WaveParams& wp, const Grid1D& grid, double h) {
    grid.validate();
    const ModelParams p = wave_model_params(ws, wp, h);
    SampledField u(grid);
    for (int n = 0; n <= grid.nt; ++n) {
        for (int i = 0; i < grid.nx; ++i) u(n, i) = wave_u(grid.x(i) - ws.C * grid.t(n), ws);
    }
    solver::InitialData data;
    data.u0 = u.row_copy(0);
    data.w0 = sample_profile(grid, [&](double x) { return wave_W(x, ws, p, wp.k); });
    data.y0 = sample_profile(grid, [&](double x) { return wave_Y(x, ws, p); });
    auto [w, y] = solver::recover_wy(u, data, p, wp.k);
    return {std::move(u), std::move(w), std::move(y)};
}

WaveParams family_params(double D) {
    WaveParams wp;
    wp.p.D = D;
    wp.p.eps = 0.02;
    wp.p.delta = 0.02;
    wp.p.beta = 50.0;
    wp.p.d = 50.0;
    wp.p.a = 0.0;
    wp.p.c = 0.0;
    wp.p.h = 0.0;
    wp.k = 0.01;
    wp.C = 1.0;
    wp.z0 = 0.0;
    wp.sign_A = 1.0;
    return wp;
}

double family_g2(double D) {
    const double s = std::sqrt(D);
    return 3900.0 * s - 1501.0 * D + 150.0 * D * s - 500.0;
}

double family_amplitude(double D) {
    const double g2 = family_g2(D);
    if (!(g2 > 0.0)) throw NoSolutionError("family: g(D)^2 <= 0", g2);
    return std::sqrt(2.0) * std::sqrt(g2) / (20.0 * std::pow(D, 0.25));
}

double family_u(double z, double D) {
    const double g = std::sqrt(family_g2(D));
    if (!(g > 0.0)) throw NoSolutionError("family: g(D)^2 <= 0", family_g2(D));
    return std::sqrt(2.0) * g / (20.0 * std::pow(D, 0.25)) * std::tanh(std::sqrt(2.0) * z * g / (20.0 * std::pow(D, 0.75))) +
           std::sqrt(D) / 2.0 - 2.0;
}

double family_admissibility_root(double lo, double hi) {
    double flo = family_g2(lo);
    const double fhi = family_g2(hi);
    if (!(flo < 0.0 && fhi > 0.0)) throw DomainError("family_admissibility_root: root not bracketed");
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = family_g2(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace fhr::waves
