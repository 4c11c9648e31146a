#include "fhr/identities.hpp"

#include <algorithm>
#include <cmath>

#include "fhr/convolution.hpp"
#include "fhr/errors.hpp"

namespace fhr::conv {

namespace {

IdentityCheck compare(std::string name, const SampledField& lhs, const SampledField& rhs) {
    IdentityCheck c{std::move(name)};
    c.residual = max_abs_diff(lhs, rhs, 1);
    for (int n = 1; n < rhs.rows(); ++n) {
        for (int i = 0; i < rhs.cols(); ++i) c.scale = std::max(c.scale, std::abs(rhs(n, i)));
    }
    return c;
}

IdentityCheck compare(std::string name, const std::vector<double>& lhs, const std::vector<double>& rhs) {
    IdentityCheck c{std::move(name)};
    for (std::size_t n = 1; n < lhs.size(); ++n) {
        c.residual = std::max(c.residual, std::abs(lhs[n] - rhs[n]));
        c.scale = std::max(c.scale, std::abs(rhs[n]));
    }
    return c;
}

}  // namespace

IdentitySuite::IdentitySuite(const ModelParams& p, const Grid1D& grid, Profile w0, Profile y0,
                             kernels::KernelKind h_kind)
    : p_(p),
      grid_(grid),
      w0_(std::move(w0)),
      y0_(std::move(y0)),
      H_(h_kind, p, grid, {.hat_weights = true, .node_values = false, .time_moments = true}),
      Kd_(kernels::KernelKind::K_delta, p, grid,
          {.hat_weights = true, .node_values = true, .time_moments = true, .hat_moments = true}) {
    if (static_cast<int>(w0_.size()) != grid.nx || static_cast<int>(y0_.size()) != grid.nx) {
        throw ShapeError("IdentitySuite: profile length differs from the grid");
    }
    P_ = conv_time_kernel(Kd_, signal(p_.eps_beta()));
    w0P_ = conv_time_kernel_space(Kd_, signal(p_.eps_beta()), w0_);
}

std::vector<double> IdentitySuite::signal(double rate) const {
    std::vector<double> g(grid_.nt + 1);
    for (int n = 0; n <= grid_.nt; ++n) g[n] = std::exp(-rate * grid_.t(n));
    return g;
}

SampledField IdentitySuite::kd_nodes() const {
    SampledField out(grid_);
    for (int n = 1; n <= grid_.nt; ++n) {
        for (int i = 0; i < grid_.nx; ++i) out(n, i) = Kd_.node_value(n, i);
    }
    return out;
}

IdentityCheck IdentitySuite::exp_delta_conv_H() const {
    return compare("exp(-delta d t) * H = K_delta", conv_time_kernel(H_, signal(p_.delta_d())), kd_nodes());
}

IdentityCheck IdentitySuite::exp_eps_conv_H() const {
    const SampledField lhs = conv_time_kernel(H_, signal(p_.eps_beta()));
    SampledField rhs = kd_nodes();
    const double f = p_.delta_d() - p_.eps_beta();
    for (std::size_t k = 0; k < rhs.data().size(); ++k) rhs.data()[k] += f * P_.data()[k];
    return compare("exp(-eps beta t) * H = K_delta + (delta d - eps beta) exp(-eps beta t) * K_delta", lhs, rhs);
}

IdentityCheck IdentitySuite::mass_balance() const {
    const double dt = grid_.dt();
    const std::vector<double> mH = kernel_mass(H_);
    const std::vector<double> md = kernel_mass(Kd_);
    const std::vector<double> lhs = cumulative_trapezoid(mH, dt);
    std::vector<double> rhs = cumulative_trapezoid(md, dt);
    for (std::size_t n = 0; n < rhs.size(); ++n) rhs[n] = md[n] + p_.delta_d() * rhs[n];
    return compare("int_0^t int H = int K_delta + delta d int int_0^t K_delta", lhs, rhs);
}

IdentityCheck IdentitySuite::spacetime_y0() const {
    const SampledField lhs = conv_spacetime_separable(H_, y0_, signal(p_.delta_d()));
    SampledField rhs = conv_space_kernel(Kd_, y0_);
    return compare("H (x) y0 exp(-delta d t) = y0 star K_delta", lhs, rhs);
}

IdentityCheck IdentitySuite::spacetime_w0() const {
    const SampledField lhs = conv_spacetime_separable(H_, w0_, signal(p_.eps_beta()));
    SampledField rhs = conv_space_kernel(Kd_, w0_);
    const double f = p_.delta_d() - p_.eps_beta();
    for (std::size_t k = 0; k < rhs.data().size(); ++k) rhs.data()[k] += f * w0P_.data()[k];
    return compare("H (x) w0 exp(-eps beta t) = w0 star [K_delta + (delta d - eps beta) exp(-eps beta t) * K_delta]",
                   lhs, rhs);
}

IdentityCheck IdentitySuite::spacetime_split() const {
    const double f = p_.delta_d() - p_.eps_beta();
    SampledField lhs = conv_spacetime_separable(Kd_, w0_, signal(p_.eps_beta()));
    SampledField rhs(grid_);
    for (std::size_t k = 0; k < rhs.data().size(); ++k) {
        lhs.data()[k] *= f;
        rhs.data()[k] = f * w0P_.data()[k];
    }
    return compare("(delta d - eps beta) K_delta (x) w0 exp(-eps beta t) = w0 star (delta d - eps beta) exp(-eps beta t) * K_delta",
                   lhs, rhs);
}

std::vector<IdentityCheck> IdentitySuite::run_all() const {
    return {exp_delta_conv_H(), exp_eps_conv_H(), mass_balance(), spacetime_y0(), spacetime_w0(), spacetime_split()};
}

}  // namespace fhr::conv
