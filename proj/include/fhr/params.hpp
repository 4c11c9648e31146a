#pragma once

#include <string>
#include <vector>

namespace fhr {

/// Kinetic and diffusion constants of the reaction-diffusion system
///   u_t = D u_xx + f(u) - w + y,  w_t = eps (u - beta w + c),  y_t = delta (-u + h - d y).
struct ModelParams {
    double D = 1.0;
    double a = 0.5;
    double eps = 1.0;
    double beta = 1.0;
    double c = 0.0;
    double delta = 1.0;
    double d = 1.0;
    double h = 0.0;

    double eps_beta() const { return eps * beta; }
    double delta_d() const { return delta * d; }

    /// Throws ConfigError naming the field if a hard invariant fails:
    /// D, beta, d > 0; eps, delta >= 0; every field finite.
    void validate() const;

    /// Soft range checks (currently 0 < a < 1); empty when nothing to report.
    std::vector<std::string> warnings() const;
};

}  // namespace fhr
