#include "fhr/kernel_table.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fhr/errors.hpp"
#include "fhr/parallel.hpp"
#include "fhr/quad.hpp"

namespace fhr {

namespace {

constexpr double kPi = std::numbers::pi;
// Offsets beyond kTailWidth standard deviations carry Gaussian mass below 1e-17.
constexpr double kTailWidth = 9.0;
constexpr int kMomentNodes = 8;
constexpr int kPanelNodes = 10;

// Second antiderivative of the Gaussian density, on y <= 0 where it is small and free of
// cancellation against the linear growth on the other side.
double gauss_psi(double y, double sd) {
    const double z = -y / (sd * std::numbers::sqrt2);
    const double cdf = 0.5 * std::erfc(z);
    const double dens = std::exp(-z * z) / (sd * std::sqrt(2.0 * kPi));
    return y * cdf + sd * sd * dens;
}

// Third antiderivative, same half-line.
double gauss_psi3(double y, double sd) {
    const double z = -y / (sd * std::numbers::sqrt2);
    const double cdf = 0.5 * std::erfc(z);
    const double dens = std::exp(-z * z) / (sd * std::sqrt(2.0 * kPi));
    return 0.5 * (y * y + sd * sd) * cdf + 0.5 * sd * sd * y * dens;
}

}  // namespace

void gaussian_hat_weights(double sd, double dx, int count, std::span<double> out) {
    if (count <= 0) return;
    if (sd <= 0.0) {
        std::fill(out.begin(), out.begin() + count, 0.0);
        out[0] = 1.0;
        return;
    }
    std::vector<double> psi(count + 1);
    for (int l = 0; l <= count; ++l) psi[l] = gauss_psi(-l * dx, sd);
    // psi(y) - psi(-y) = y, so the q = 0 stencil folds onto the left half.
    out[0] = (2.0 * psi[1] + dx - 2.0 * psi[0]) / dx;
    for (int q = 1; q < count; ++q) out[q] = (psi[q + 1] - 2.0 * psi[q] + psi[q - 1]) / dx;
}

void gaussian_bubble_weights(double sd, double dx, int count, std::span<double> out) {
    if (count <= 0) return;
    if (sd <= 0.0) {
        std::fill(out.begin(), out.begin() + count, 0.0);
        return;
    }
    // Mirror the cell onto [-(q+1) dx, -q dx] and integrate by parts three times.
    double p2b = gauss_psi(0.0, sd);
    double p3b = gauss_psi3(0.0, sd);
    for (int q = 0; q < count; ++q) {
        const double a = -(q + 1) * dx;
        const double p2a = gauss_psi(a, sd);
        const double p3a = gauss_psi3(a, sd);
        out[q] = std::max(0.0, 0.5 * dx * (p2a + p2b) - (p3b - p3a));
        p2b = p2a;
        p3b = p3a;
    }
}

void graded_unit_rule(std::vector<double>& nodes, std::vector<double>& weights) {
    static const quad::GaussRule rule = quad::gauss_legendre(kPanelNodes);
    const double breaks[] = {0.0, 1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 3.0 / 4, 1.0};
    nodes.clear();
    weights.clear();
    for (std::size_t p = 0; p + 1 < std::size(breaks); ++p) {
        const double a = breaks[p];
        const double b = breaks[p + 1];
        for (int i = 0; i < kPanelNodes; ++i) {
            nodes.push_back(0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i]);
            weights.push_back(0.5 * (b - a) * rule.weights[i]);
        }
    }
}

KernelTable::KernelTable(kernels::KernelKind kind, const ModelParams& p, const Grid1D& grid, KernelTableOptions opt)
    : kind_(kind), params_(p), grid_(grid), alpha_(kernels::resolvent_alpha(kind)) {
    p.validate();
    grid.validate();
    graded_unit_rule(v_nodes_, v_weights_);
    if (opt.hat_weights || opt.node_values) build_hat_and_nodes(opt);
    if (opt.time_moments) build_moments();
    if (opt.hat_moments) build_hat_moments(opt.curvature);
}

std::vector<double> KernelTable::weight_nodes(double tau) const {
    std::vector<double> w(v_nodes_.size());
    for (std::size_t k = 0; k < v_nodes_.size(); ++k) {
        const double u = tau * v_nodes_[k] * v_nodes_[k];
        w[k] = kernels::resolvent_weight(kind_, u, tau, params_);
    }
    return w;
}

double KernelTable::w_part_value(double x, double tau, const std::vector<double>& w) const {
    // int_0^tau phi(x,u) W(u,tau) du with u = tau v^2.
    const double D = params_.D;
    const double pref = std::sqrt(tau / (kPi * D));
    double s = 0.0;
    for (std::size_t k = 0; k < v_nodes_.size(); ++k) {
        const double v2 = v_nodes_[k] * v_nodes_[k];
        s += v_weights_[k] * std::exp(-params_.a * tau * v2 - x * x / (4.0 * D * tau * v2)) * w[k];
    }
    return pref * s;
}

int KernelTable::hat_count(double tau) const {
    const double sd = std::sqrt(2.0 * params_.D * tau);
    return std::min(grid_.nx, static_cast<int>(std::ceil(kTailWidth * sd / grid_.dx())) + 2);
}

void KernelTable::accumulate_hat(double tau, const std::vector<double>& w, double scale, std::vector<double>& hat,
                                 std::vector<double>* bubble) const {
    const double dx = grid_.dx();
    const double a = params_.a;
    const double sd_max = std::sqrt(2.0 * params_.D * tau);
    const int count = static_cast<int>(hat.size());
    std::vector<double> g(count);
    auto add = [&](double c, double sd) {
        const int cnt = std::min(count, static_cast<int>(std::ceil(kTailWidth * sd / dx)) + 2);
        gaussian_hat_weights(sd, dx, cnt, g);
        for (int q = 0; q < cnt; ++q) hat[q] += c * g[q];
        if (bubble) {
            gaussian_bubble_weights(sd, dx, cnt, g);
            for (int q = 0; q < cnt; ++q) (*bubble)[q] += c * g[q];
        }
    };
    if (alpha_ != 0.0) add(scale * alpha_ * std::exp(-a * tau), sd_max);
    for (std::size_t k = 0; k < v_nodes_.size(); ++k) {
        const double v = v_nodes_[k];
        const double c = scale * v_weights_[k] * 2.0 * tau * v * std::exp(-a * tau * v * v) * w[k];
        if (c != 0.0) add(c, sd_max * v);
    }
}

void KernelTable::build_hat_and_nodes(const KernelTableOptions& opt) {
    const int nt = grid_.nt;
    const int nx = grid_.nx;
    if (opt.hat_weights) hat_.assign(nt, {});
    if (opt.hat_weights && opt.curvature) bubble_.assign(nt, {});
    if (opt.node_values) nodes_.assign(static_cast<std::size_t>(nt) * nx, 0.0);

    // Node values only need one side of a mirror-symmetric grid.
    const bool mirrored = grid_.zero_is_node();
    const int z = mirrored ? grid_.zero_index() : 0;

    parallel_for(1, static_cast<std::size_t>(nt) + 1, [&](std::size_t mm) {
        const int m = static_cast<int>(mm);
        const double tau = grid_.t(m);
        const std::vector<double> w = weight_nodes(tau);

        if (opt.hat_weights) {
            const int count = hat_count(tau);
            std::vector<double> out(count, 0.0);
            std::vector<double> bout(opt.curvature ? count : 0, 0.0);
            accumulate_hat(tau, w, 1.0, out, opt.curvature ? &bout : nullptr);
            hat_[m - 1] = std::move(out);
            if (opt.curvature) bubble_[m - 1] = std::move(bout);
        }

        if (opt.node_values) {
            double* row = nodes_.data() + static_cast<std::size_t>(m - 1) * nx;
            for (int i = 0; i < nx; ++i) {
                if (mirrored && i < z && 2 * z - i < nx) continue;
                const double x = grid_.x(i);
                row[i] = alpha_ * kernels::phi(x, tau, params_) + w_part_value(x, tau, w);
            }
            if (mirrored) {
                for (int i = 0; i < z; ++i) {
                    if (2 * z - i < nx) row[i] = row[2 * z - i];
                }
            }
        }
    });
}

void KernelTable::panel_rule(int k, std::vector<double>& taus, std::vector<double>& omegas) const {
    // Gauss nodes in tau; the first panel uses tau = dt w^2 to absorb tau^(1/2) terms.
    static const quad::GaussRule rule = quad::gauss_legendre(kMomentNodes);
    const double dt = grid_.dt();
    const double t0 = grid_.t(k);
    taus.resize(kMomentNodes);
    omegas.resize(kMomentNodes);
    for (int l = 0; l < kMomentNodes; ++l) {
        const double w = 0.5 * (1.0 + rule.nodes[l]);
        if (k == 0) {
            taus[l] = dt * w * w;
            omegas[l] = 0.5 * rule.weights[l] * 2.0 * dt * w;
        } else {
            taus[l] = t0 + dt * w;
            omegas[l] = 0.5 * rule.weights[l] * dt;
        }
    }
}

void KernelTable::build_hat_moments(bool curvature) {
    const int nt = grid_.nt;
    const double dt = grid_.dt();
    hat_ma_.assign(nt, {});
    hat_mb_.assign(nt, {});
    if (curvature) {
        bub_ma_.assign(nt, {});
        bub_mb_.assign(nt, {});
    }
    parallel_for(0, static_cast<std::size_t>(nt), [&](std::size_t kk) {
        const int k = static_cast<int>(kk);
        const double t0 = grid_.t(k);
        const double t1 = grid_.t(k + 1);
        std::vector<double> taus, omegas;
        panel_rule(k, taus, omegas);
        const int count = hat_count(t1);
        std::vector<double> ha(count, 0.0), hb(count, 0.0);
        std::vector<double> ba(curvature ? count : 0, 0.0), bb(curvature ? count : 0, 0.0);
        for (int l = 0; l < kMomentNodes; ++l) {
            const std::vector<double> w = weight_nodes(taus[l]);
            accumulate_hat(taus[l], w, omegas[l] * (t1 - taus[l]) / dt, ha, curvature ? &ba : nullptr);
            accumulate_hat(taus[l], w, omegas[l] * (taus[l] - t0) / dt, hb, curvature ? &bb : nullptr);
        }
        hat_ma_[k] = std::move(ha);
        hat_mb_[k] = std::move(hb);
        if (curvature) {
            bub_ma_[k] = std::move(ba);
            bub_mb_[k] = std::move(bb);
        }
    });
}

void KernelTable::build_moments() {
    const int nt = grid_.nt;
    const int nx = grid_.nx;
    const double dt = grid_.dt();
    moment_a_.assign(static_cast<std::size_t>(nt) * nx, 0.0);
    moment_b_.assign(static_cast<std::size_t>(nt) * nx, 0.0);
    const bool mirrored = grid_.zero_is_node();
    const int z = mirrored ? grid_.zero_index() : 0;
    const quad::Tolerance tol{1e-13, 1e-11};

    parallel_for(0, static_cast<std::size_t>(nt), [&](std::size_t kk) {
        const int k = static_cast<int>(kk);
        const double t0 = grid_.t(k);
        const double t1 = grid_.t(k + 1);
        std::vector<double> taus, omegas;
        panel_rule(k, taus, omegas);
        std::vector<std::vector<double>> weights(kMomentNodes);
        for (int l = 0; l < kMomentNodes; ++l) weights[l] = weight_nodes(taus[l]);

        double* ra = moment_a_.data() + static_cast<std::size_t>(k) * nx;
        double* rb = moment_b_.data() + static_cast<std::size_t>(k) * nx;
        for (int i = 0; i < nx; ++i) {
            if (mirrored && i < z && 2 * z - i < nx) continue;
            const double x = grid_.x(i);
            double ma = 0.0;
            double mb = 0.0;
            for (int l = 0; l < kMomentNodes; ++l) {
                const double kw = omegas[l] * w_part_value(x, taus[l], weights[l]);
                ma += kw * (t1 - taus[l]) / dt;
                mb += kw * (taus[l] - t0) / dt;
            }
            if (alpha_ != 0.0) {
                auto fa = [&](double tau) { return kernels::phi(x, tau, params_) * (t1 - tau) / dt; };
                auto fb = [&](double tau) { return kernels::phi(x, tau, params_) * (tau - t0) / dt; };
                if (k == 0) {
                    ma += alpha_ * quad::integrate_sqrt_lower(fa, t0, t1, tol).value;
                    mb += alpha_ * quad::integrate_sqrt_lower(fb, t0, t1, tol).value;
                } else {
                    ma += alpha_ * quad::integrate_smooth(fa, t0, t1, tol).value;
                    mb += alpha_ * quad::integrate_smooth(fb, t0, t1, tol).value;
                }
            }
            ra[i] = ma;
            rb[i] = mb;
        }
        if (mirrored) {
            for (int i = 0; i < z; ++i) {
                if (2 * z - i < nx) {
                    ra[i] = ra[2 * z - i];
                    rb[i] = rb[2 * z - i];
                }
            }
        }
    });
}

int KernelTable::offsets(int m) const {
    if (m == 0) return 1;
    return static_cast<int>(hat_weights(m).size());
}

std::span<const double> KernelTable::hat_weights(int m) const {
    if (hat_.empty()) throw Error("KernelTable built without hat weights");
    if (m < 1 || m > grid_.nt) throw DomainError("hat weight lag out of range");
    return hat_[m - 1];
}

void KernelTable::apply_hat(int m, std::span<const double> f, std::span<double> out, double scale,
                            bool accumulate) const {
    const int nx = grid_.nx;
    if (static_cast<int>(f.size()) != nx || static_cast<int>(out.size()) != nx) {
        throw ShapeError("apply_hat: profile length differs from the grid");
    }
    if (!accumulate) std::fill(out.begin(), out.end(), 0.0);
    if (m == 0) {
        for (int i = 0; i < nx; ++i) out[i] += scale * alpha_ * f[i];
        return;
    }
    const std::span<const double> b = bubble_.empty() ? std::span<const double>{} : std::span<const double>(bubble_[m - 1]);
    apply_even_weights(hat_weights(m), b, grid_.dx(), f, out, scale);
}

std::span<const double> KernelTable::hat_moment_a(int k) const {
    if (hat_ma_.empty()) throw Error("KernelTable built without hat moments");
    return hat_ma_.at(k);
}
std::span<const double> KernelTable::hat_moment_b(int k) const {
    if (hat_mb_.empty()) throw Error("KernelTable built without hat moments");
    return hat_mb_.at(k);
}
std::span<const double> KernelTable::bubble_moment_a(int k) const {
    return bub_ma_.empty() ? std::span<const double>{} : std::span<const double>(bub_ma_.at(k));
}
std::span<const double> KernelTable::bubble_moment_b(int k) const {
    return bub_mb_.empty() ? std::span<const double>{} : std::span<const double>(bub_mb_.at(k));
}

void apply_even_weights(std::span<const double> hat, std::span<const double> bubble, double dx,
                        std::span<const double> f, std::span<double> out, double scale) {
    const int nx = static_cast<int>(f.size());
    const int count = static_cast<int>(hat.size());
    for (int i = 0; i < nx; ++i) {
        double s = count > 0 ? hat[0] * f[i] : 0.0;
        const int qmax = std::min(count - 1, std::max(i, nx - 1 - i));
        for (int q = 1; q <= qmax; ++q) {
            double pair = 0.0;
            if (i - q >= 0) pair += f[i - q];
            if (i + q < nx) pair += f[i + q];
            s += hat[q] * pair;
        }
        out[i] += scale * s;
    }
    if (bubble.empty()) return;

    // Cell curvature from second differences, averaged over the two cell ends.
    std::vector<double> d2(nx);
    for (int j = 0; j < nx; ++j) {
        const double l = j > 0 ? f[j - 1] : 0.0;
        const double r = j + 1 < nx ? f[j + 1] : 0.0;
        d2[j] = (l - 2.0 * f[j] + r) / (dx * dx);
    }
    // cell c spans nodes c - 1 and c, c = 0..nx
    std::vector<double> cell(nx + 1);
    for (int c = 0; c <= nx; ++c) {
        const double l = c > 0 ? d2[c - 1] : 0.0;
        const double r = c < nx ? d2[c] : 0.0;
        cell[c] = 0.5 * (l + r);
    }
    const int bc = static_cast<int>(bubble.size());
    for (int i = 0; i < nx; ++i) {
        // Kernel offsets in [q dx, (q+1) dx] meet the data cells i - q and i + q + 1.
        double s = 0.0;
        for (int q = 0; q < bc; ++q) {
            const int lo = i - q;
            const int hi = i + q + 1;
            if (lo < 0 && hi > nx) break;
            double pair = 0.0;
            if (lo >= 0) pair += cell[lo];
            if (hi <= nx) pair += cell[hi];
            s += bubble[q] * pair;
        }
        out[i] -= scale * s;
    }
}

double KernelTable::mass(int m) const {
    if (m == 0) return alpha_;
    const std::span<const double> w = hat_weights(m);
    double s = 0.0;
    for (std::size_t q = w.size(); q-- > 1;) s += w[q];
    return w[0] + 2.0 * s;
}

double KernelTable::node_value(int n, int i) const {
    if (nodes_.empty()) throw Error("KernelTable built without node values");
    if (n < 1 || n > grid_.nt) throw DomainError("node value row out of range (t = 0 is singular)");
    return nodes_[static_cast<std::size_t>(n - 1) * grid_.nx + i];
}

}  // namespace fhr
