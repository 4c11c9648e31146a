#include "fhr/commands.hpp"

#include <algorithm>
#include <array>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <tuple>

#include "fhr/errors.hpp"
#include "fhr/identities.hpp"
#include "fhr/kernels.hpp"
#include "fhr/parallel.hpp"
#include "fhr/quad.hpp"
#include "fhr/solver_fd.hpp"
#include "fhr/solver_integral.hpp"
#include "fhr/waves.hpp"

namespace fhr::cli {

namespace k = fhr::kernels;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void write_header(const RunConfig& rc, std::ostream& out) {
    const std::string canon = rc.settings.canonical();
    char hash[32];
    std::snprintf(hash, sizeof hash, "0x%016" PRIx64, fnv1a(canon));
    out << "# fhr " << to_string(rc.command) << "\n";
    out << "# config_hash = " << hash << "\n";
    std::size_t pos = 0;
    while (pos < canon.size()) {
        const auto nl = canon.find('\n', pos);
        out << "#@ " << canon.substr(pos, nl - pos) << "\n";
        pos = nl + 1;
    }
}

void write_row(std::ostream& out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) out << ',';
        out << format_number(v);
        first = false;
    }
    out << '\n';
}

std::vector<double> linspace(double a, double b, int n) {
    if (n == 1) return {a};
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

// ---- verification checks ---------------------------------------------------

CheckResult laplace_check(const ModelParams& p, k::KernelForm form, bool fault) {
    double worst = 0.0;
    for (double x : {0.5, 1.0, 2.0}) {
        for (double s : {1.0, 2.0, 5.0}) {
            const auto est = quad::integrate_laplace(
                [&](double t) { return k::eval_H(x, t, p, k::kKernelTolerance, form).h; }, s, k::envelope_H(s, p),
                {1e-10, 1e-9});
            double ref = k::hat_H(x, s, p);
            if (fault) {
                const double sg = k::sigma(s, p) + 1e-3;
                const double sd = std::sqrt(p.D);
                ref = std::exp(-std::abs(x) * sg / sd) / (2.0 * sg * sd);
            }
            worst = std::max(worst, std::abs(est.value - ref) / std::abs(ref));
        }
    }
    return {"laplace_transform", 1e-6, worst, worst < 1e-6};
}

CheckResult operator_check(const ModelParams& p, k::KernelForm form) {
    const quad::Tolerance tight{1e-13, 1e-12};
    auto H = [&](double x, double t) { return k::eval_H(x, t, p, tight, form).h; };
    const double hx = 1e-3;
    const double ht = 1e-4;
    double worst = 0.0;
    for (double t : {0.25, 0.8}) {
        for (double x : {0.3, 0.7, 1.2, 2.0, 3.0}) {
            const double h0 = H(x, t);
            const double Ht = (-H(x, t + 2 * ht) + 8 * H(x, t + ht) - 8 * H(x, t - ht) + H(x, t - 2 * ht)) / (12 * ht);
            const double Hxx =
                (-H(x + 2 * hx, t) + 16 * H(x + hx, t) - 30 * h0 + 16 * H(x - hx, t) - H(x - 2 * hx, t)) / (12 * hx * hx);
            auto mem = [&](double tau) {
                const double lag = t - tau;
                return (p.eps * std::exp(-p.eps_beta() * lag) + p.delta * std::exp(-p.delta_d() * lag)) *
                       k::eval_H(x, tau, p, k::kKernelTolerance, form).h;
            };
            const double M = quad::integrate_panels(mem, {0.0, 0.25 * t, 0.5 * t, t}, {1e-11, 1e-10}).value;
            worst = std::max(worst, std::abs(Ht - p.D * Hxx + p.a * h0 + M) / std::max(1.0, std::abs(h0)));
        }
    }
    return {"operator_annihilates_H", 1e-3, worst, worst < 1e-3};
}

CheckResult small_time_check(const ModelParams& p, k::KernelForm form) {
    const double v = std::abs(k::eval_H(1.0, 1e-4, p, k::kKernelTolerance, form).h);
    return {"small_time_H(1,1e-4)", 1e-8, v, v < 1e-8};
}

CheckResult h2_bound_check(const ModelParams& p) {
    double worst = 0.0;
    for (int j = 0; j < 20; ++j) {
        const double x = (j % 2 ? -1.0 : 1.0) * (0.5 + 0.4 * j);
        const double t = 0.1 + 0.15 * (j % 7);
        const double b = k::H2_bound(t, p);
        const double v = std::abs(k::eval_H2(x, t, p));
        worst = std::max(worst, b > 0.0 ? v / b : (v > 0.0 ? kNaN : 0.0));
    }
    return {"H2_bound_ratio", 1.0, worst, worst <= 1.0};
}

CheckResult mass_check(const ModelParams& p, k::KernelForm form) {
    const int nt = 4000;
    const std::vector<double> M = solver::mass_volterra(p, 1.0, nt);
    double worst = 0.0;
    for (int j = 1; j <= 20; ++j) {
        const double t = 0.05 * j;
        const double L = 12.0 * std::sqrt(p.D * t) + 2.0;
        std::vector<double> br;
        for (int q = 0; q <= 8; ++q) br.push_back(L * q / 8.0);
        const double half = quad::integrate_panels(
            [&](double x) { return k::eval_H(x, t, p, {1e-12, 1e-11}, form).h; }, br, {1e-10, 1e-9}).value;
        worst = std::max(worst, std::abs(2.0 * half - M[static_cast<std::size_t>(std::lround(t * nt))]));
    }
    return {"mass_vs_volterra", 1e-5, worst, worst < 1e-5};
}

void identity_checks(const RunConfig& rc, std::vector<CheckResult>& out) {
    const Grid1D& g = rc.grid;
    const Profile w0 = sample_profile(g, [](double x) { return std::exp(-x * x); });
    const Profile y0 = sample_profile(g, [](double x) { return 0.5 * std::exp(-0.5 * (x - 1) * (x - 1)); });
    for (const auto& c : conv::IdentitySuite(rc.params, g, w0, y0, k::KernelKind::H).run_all()) {
        out.push_back({"identity: " + c.name, 1e-4, c.residual, c.residual < 1e-4});
    }
}

// ---- commands --------------------------------------------------------------

int cmd_kernel(const RunConfig& rc, std::ostream& out) {
    const Settings& s = rc.settings;
    const auto xs = linspace(s.number("kernel.x_min"), s.number("kernel.x_max"), s.integer("kernel.nx"));
    const auto ts = linspace(s.number("kernel.t_min"), s.number("kernel.t_max"), s.integer("kernel.nt"));
    const quad::Tolerance tol{s.number("kernel.abs_tol"), s.number("kernel.rel_tol")};
    const auto form = parse_form(s.get("kernel.form"), "kernel.form");
    std::vector<k::KernelSample> rows(xs.size() * ts.size());
    parallel_for(0, rows.size(), [&](std::size_t j) {
        rows[j] = k::eval_all(xs[j % xs.size()], ts[j / xs.size()], rc.params, tol, form);
    });
    write_header(rc, out);
    out << "x,t,H1,H2,H,K_eps,K_delta,err_est\n";
    for (const auto& r : rows) write_row(out, {r.x, r.t, r.h1, r.h2, r.h, *r.k_eps, *r.k_delta, r.err_est});
    return 0;
}

int cmd_verify(const RunConfig& rc, std::ostream& out) {
    const auto checks = run_verification(rc);
    write_header(rc, out);
    out << "check,target,achieved,pass\n";
    bool all = true;
    for (const auto& c : checks) {
        out << '"' << c.name << "\"," << format_number(c.target) << ',' << format_number(c.achieved) << ','
            << (c.pass ? "PASS" : "FAIL") << '\n';
        all = all && c.pass;
    }
    out << "# " << (all ? "all checks passed" : "some checks failed") << '\n';
    return all ? 0 : 1;
}

int cmd_solve(const RunConfig& rc, std::ostream& out) {
    const Settings& s = rc.settings;
    const Grid1D& g = rc.grid;
    const ModelParams& p = rc.params;
    solver::InitialData data;
    data.u0 = sample_profile(g, parse_profile(s.get("solve.u0"), "solve.u0"));
    data.w0 = sample_profile(g, parse_profile(s.get("solve.w0"), "solve.w0"));
    data.y0 = sample_profile(g, parse_profile(s.get("solve.y0"), "solve.y0"));

    std::vector<std::string> notes;
    bool ok = true;

    solver::PicardOptions opt;
    opt.form = parse_form(s.get("solve.form"), "solve.form");
    opt.tol = s.number("solve.tol");
    opt.max_iter = s.integer("solve.max_iter");
    opt.blowup_cap = s.number("solve.blowup_cap");
    solver::SolveReport rep;
    bool have_int = false;
    try {
        rep = solver::picard_solve(data, p, g, opt);
        have_int = true;
        notes.push_back("picard iterations = " + std::to_string(rep.iterations) + ", converged = " +
                        (rep.converged ? "true" : "false") + ", final update = " + format_number(rep.final_update_norm));
        if (!rep.converged) {
            notes.push_back("picard: not converged within solve.max_iter");
            ok = false;
        }
    } catch (const DivergenceError& e) {
        notes.push_back(std::string("picard: diverged: ") + e.what());
        ok = false;
    }

    const int rx = s.integer("solve.fd_refine_x");
    const int rt = s.integer("solve.fd_refine_t");
    fd::FDConfig cfg;
    cfg.grid = g;
    cfg.grid.nx = (g.nx - 1) * rx + 1;
    cfg.grid.nt = g.nt * rt;
    cfg.output_stride = rt;
    cfg.theta = s.number("solve.theta");
    cfg.boundary = s.get("solve.boundary") == "fixed_value" ? fd::Boundary::fixed_value : fd::Boundary::zero_flux;
    solver::InitialData fdata;
    fdata.u0 = sample_profile(cfg.grid, parse_profile(s.get("solve.u0"), "solve.u0"));
    fdata.w0 = sample_profile(cfg.grid, parse_profile(s.get("solve.w0"), "solve.w0"));
    fdata.y0 = sample_profile(cfg.grid, parse_profile(s.get("solve.y0"), "solve.y0"));
    fd::FDState fs;
    bool have_fd = false;
    try {
        fs = fd::fd_solve(fdata, p, cfg);
        have_fd = true;
    } catch (const BlowUpError& e) {
        notes.push_back(std::string("fd: ") + e.what());
        ok = false;
    }

    const int slices = s.integer("solve.slices");
    std::vector<int> levels;
    for (int j = 0; j <= slices; ++j) levels.push_back(j * g.nt / slices);
    auto fd_at = [&](const SampledField& f, int n, int i) { return have_fd ? f(n, i * rx) : kNaN; };
    auto int_at = [&](const SampledField& f, int n, int i) { return have_int ? f(n, i) : kNaN; };

    if (have_int && have_fd) {
        for (int n : levels) {
            std::vector<double> a(g.nx), b(g.nx);
            std::string line = "slice t = " + format_number(g.t(n));
            for (const auto& [name, fi, ff] : {std::tuple{"u", &rep.u, &fs.u}, std::tuple{"w", &rep.w, &fs.w},
                                               std::tuple{"y", &rep.y, &fs.y}}) {
                for (int i = 0; i < g.nx; ++i) {
                    a[i] = (*fi)(n, i);
                    b[i] = (*ff)(n, i * rx);
                }
                line += std::string(", rel_l2_") + name + " = " + format_number(relative_l2(a, b));
            }
            notes.push_back(line);
        }
    }

    write_header(rc, out);
    for (const auto& n : notes) out << "# " << n << '\n';
    out << "t,x,u_int,w_int,y_int,u_fd,w_fd,y_fd\n";
    for (int n : levels) {
        for (int i = 0; i < g.nx; ++i) {
            write_row(out, {g.t(n), g.x(i), int_at(rep.u, n, i), int_at(rep.w, n, i), int_at(rep.y, n, i),
                            fd_at(fs.u, n, i), fd_at(fs.w, n, i), fd_at(fs.y, n, i)});
        }
    }
    return ok ? 0 : 1;
}

int cmd_wave(const RunConfig& rc, std::ostream& out) {
    const Settings& s = rc.settings;
    const auto zs = linspace(s.number("wave.z_min"), s.number("wave.z_max"), s.integer("wave.nz"));
    const bool family = s.flag("wave.family");
    std::vector<std::string> notes;
    std::vector<std::pair<double, waves::WaveSolution>> profiles;
    for (double D : s.numbers("wave.D")) {
        waves::WaveParams wp;
        if (family) {
            wp = waves::family_params(D);
        } else {
            wp.p = rc.params;
            wp.p.D = D;
            wp.k = s.number("wave.k");
            wp.C = s.number("wave.C");
        }
        wp.z0 = s.number("wave.z0");
        wp.sign_A = s.number("wave.sign_A");
        try {
            const auto ws = waves::solve_wave_coefficients(wp);
            const auto r = waves::wave_residual_ode(ws, wp, zs);
            notes.push_back("D = " + format_number(D) + ": b = " + format_number(ws.b) + ", y_ric = " +
                            format_number(ws.y_ric) + ", a_implied = " + format_number(ws.a_implied) +
                            ", amplitude = " + format_number(ws.amplitude()) + ", residual = " +
                            format_number(r.residual) + ", term_scale = " + format_number(r.scale));
            profiles.emplace_back(D, ws);
        } catch (const NoSolutionError& e) {
            notes.push_back("D = " + format_number(D) + ": no solution (D y_ric = " + format_number(e.value()) + ")");
        }
    }
    if (family) notes.push_back("admissibility root = " + format_number(waves::family_admissibility_root()));
    write_header(rc, out);
    for (const auto& n : notes) out << "# " << n << '\n';
    out << "D,z,u\n";
    for (const auto& [D, ws] : profiles) {
        for (double z : zs) write_row(out, {D, z, waves::wave_u(z, ws)});
    }
    return 0;
}

int cmd_sweep(const RunConfig& rc, std::ostream& out) {
    const Settings& s = rc.settings;
    const std::string param = s.get("sweep.param");
    const double x = s.number("sweep.x");
    const double t = s.number("sweep.t");
    const auto form = parse_form(s.get("sweep.form"), "sweep.form");
    const auto values = s.numbers("sweep.values");
    std::vector<std::array<double, 7>> rows(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        Settings sj = s;
        sj.set("model." + param, format_number(values[j]));
        const ModelParams p = resolve(Command::kernel, sj).params;
        const auto r = k::eval_all(x, t, p, k::kKernelTolerance, form);
        const double m = solver::mass_volterra(p, t, 2000).back();
        rows[j] = {values[j], r.h1, r.h2, r.h, *r.k_eps, *r.k_delta, m};
    }
    write_header(rc, out);
    out << param << ",H1,H2,H,K_eps,K_delta,mass_volterra\n";
    for (const auto& r : rows) write_row(out, {r[0], r[1], r[2], r[3], r[4], r[5], r[6]});
    return 0;
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<CheckResult> run_verification(const RunConfig& rc) {
    const Settings& s = rc.settings;
    const ModelParams& p = rc.params;
    const auto form = parse_form(s.get("verify.form"), "verify.form");
    const bool fault = s.get("verify.fault") == "sigma";
    std::vector<CheckResult> out;
    for (const auto& suite : s.words("verify.suites")) {
        if (suite == "laplace") out.push_back(laplace_check(p, form, fault));
        if (suite == "operator") out.push_back(operator_check(p, form));
        if (suite == "small_time") out.push_back(small_time_check(p, form));
        if (suite == "h2_bound") out.push_back(h2_bound_check(p));
        if (suite == "mass") out.push_back(mass_check(p, form));
        if (suite == "identities") identity_checks(rc, out);
    }
    return out;
}

int run_command(const RunConfig& rc, std::ostream& out) {
    switch (rc.command) {
        case Command::kernel: return cmd_kernel(rc, out);
        case Command::verify: return cmd_verify(rc, out);
        case Command::solve: return cmd_solve(rc, out);
        case Command::wave: return cmd_wave(rc, out);
        case Command::sweep: return cmd_sweep(rc, out);
    }
    return 1;
}

}  // namespace fhr::cli
