#pragma once

// Mass of the fundamental solution from the moment system
//   M' = -a M - eps P - delta R,  P' = M - eps beta P,  R' = M - delta d R,  M(0) = 1,
// integrated by classical RK4. Independent of the Volterra form used by the library.

#include <algorithm>
#include <cmath>

#include "fhr/params.hpp"

namespace oracle {

inline double mass_ode(const fhr::ModelParams& p, double t, int steps_per_unit = 4000) {
    const int n = std::max(10, static_cast<int>(std::ceil(t * steps_per_unit)));
    const double h = t / n;
    double M = 1.0, P = 0.0, R = 0.0;
    auto rhs = [&](double m, double pp, double rr, double& dm, double& dp, double& dr) {
        dm = -p.a * m - p.eps * pp - p.delta * rr;
        dp = m - p.eps * p.beta * pp;
        dr = m - p.delta * p.d * rr;
    };
    for (int i = 0; i < n; ++i) {
        double k1m, k1p, k1r, k2m, k2p, k2r, k3m, k3p, k3r, k4m, k4p, k4r;
        rhs(M, P, R, k1m, k1p, k1r);
        rhs(M + 0.5 * h * k1m, P + 0.5 * h * k1p, R + 0.5 * h * k1r, k2m, k2p, k2r);
        rhs(M + 0.5 * h * k2m, P + 0.5 * h * k2p, R + 0.5 * h * k2r, k3m, k3p, k3r);
        rhs(M + h * k3m, P + h * k3p, R + h * k3r, k4m, k4p, k4r);
        M += h / 6 * (k1m + 2 * k2m + 2 * k3m + k4m);
        P += h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
        R += h / 6 * (k1r + 2 * k2r + 2 * k3r + k4r);
    }
    return M;
}

}  // namespace oracle
