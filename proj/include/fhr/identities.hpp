#pragma once

#include <string>
#include <vector>

#include "fhr/grid.hpp"
#include "fhr/kernel_table.hpp"
#include "fhr/params.hpp"

namespace fhr::conv {

/// One discrete identity check: max |lhs - rhs| over every node with t > 0.
struct IdentityCheck {
    std::string name;
    double residual = 0.0;
    double scale = 0.0;  // max |rhs|, for context
};

/// The convolution identities linking H and K_delta, evaluated on a grid with the
/// discrete products of this module. Each side is discretized independently, so the
/// residuals are O(dt^2 + dx^2) when the identity holds.
class IdentitySuite {
public:
    /// w0, y0 are the profiles used by the space-time identities; h_kind selects which
    /// H is tested (the default is the kernel as defined, H = H1 - H2).
    IdentitySuite(const ModelParams& p, const Grid1D& grid, Profile w0, Profile y0,
                  kernels::KernelKind h_kind = kernels::KernelKind::H);

    /// e^{-delta d t} * H = K_delta.
    IdentityCheck exp_delta_conv_H() const;
    /// e^{-eps beta t} * H = K_delta + (delta d - eps beta) e^{-eps beta t} * K_delta.
    IdentityCheck exp_eps_conv_H() const;
    /// int_0^t int H = int K_delta + delta d int int_0^t K_delta.
    IdentityCheck mass_balance() const;
    /// H (x) (y0 e^{-delta d t}) = y0 star K_delta.
    IdentityCheck spacetime_y0() const;
    /// H (x) (w0 e^{-eps beta t}) = w0 star [K_delta + (delta d - eps beta) e^{-eps beta t} * K_delta].
    IdentityCheck spacetime_w0() const;
    /// (delta d - eps beta) K_delta (x) (w0 e^{-eps beta t}) = w0 star (delta d - eps beta) e^{-eps beta t} * K_delta.
    IdentityCheck spacetime_split() const;

    std::vector<IdentityCheck> run_all() const;

    const KernelTable& H() const { return H_; }
    const KernelTable& K_delta() const { return Kd_; }

private:
    std::vector<double> signal(double rate) const;
    SampledField kd_nodes() const;

    ModelParams p_;
    Grid1D grid_;
    Profile w0_;
    Profile y0_;
    KernelTable H_;
    KernelTable Kd_;
    SampledField P_;    // e^{-eps beta t} * K_delta at the nodes
    SampledField w0P_;  // w0 star P
};

}  // namespace fhr::conv
