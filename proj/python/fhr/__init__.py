"""FitzHugh-Rinzel kernels, solvers and travelling waves (C++ core)."""

from ._fhr import (
    ConfigError,
    DivergenceError,
    Error,
    Grid1D,
    H2_bound,
    KernelForm,
    ModelParams,
    NoSolutionError,
    eval_kernels,
    family_admissibility_root,
    family_amplitude,
    family_profile,
    family_wave,
    fd_solve,
    hat_H,
    mass_volterra,
    picard_solve,
    run,
    sigma,
)

__all__ = [
    "ConfigError",
    "DivergenceError",
    "Error",
    "Grid1D",
    "H2_bound",
    "KernelForm",
    "ModelParams",
    "NoSolutionError",
    "eval_kernels",
    "family_admissibility_root",
    "family_amplitude",
    "family_profile",
    "family_wave",
    "fd_solve",
    "hat_H",
    "mass_volterra",
    "picard_solve",
    "run",
    "sigma",
]
