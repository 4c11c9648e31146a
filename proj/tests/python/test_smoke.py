import math

import numpy as np
import pytest

import fhr


def test_kernels_and_transform():
    p = fhr.ModelParams()
    k = fhr.eval_kernels(1.0, 1.0, p)
    assert set(k) == {"H1", "H2", "H", "K_eps", "K_delta", "err_est"}
    assert k["H"] == pytest.approx(k["H1"] - k["H2"], abs=1e-15)
    assert fhr.eval_kernels(-1.0, 1.0, p)["H"] == k["H"]
    assert abs(k["H2"]) <= fhr.H2_bound(1.0, p)
    s = 2.0
    sig = fhr.sigma(s, p)
    assert sig * sig == pytest.approx(s + p.a + p.delta / (s + p.delta * p.d) + p.eps / (s + p.beta * p.eps))
    assert fhr.hat_H(1.0, s, p) == pytest.approx(math.exp(-sig) / (2 * sig))


def test_params_validation():
    p = fhr.ModelParams()
    p.D = -1.0
    with pytest.raises(fhr.ConfigError):
        p.validate()


def test_mass_volterra_starts_at_one():
    m = fhr.mass_volterra(fhr.ModelParams(), 1.0, 100)
    assert m.shape == (101,)
    assert m[0] == 1.0
    assert np.all(np.diff(m) < 0)


def test_solvers_agree_for_small_gaussian():
    p = fhr.ModelParams()
    g = fhr.Grid1D(-12.0, 12.0, 241, 1.0, 100)
    x = g.x()
    rep = fhr.picard_solve(0.1 * np.exp(-x * x), p, g, form=fhr.KernelForm.fundamental)
    assert rep["converged"] and rep["iterations"] <= 15
    assert rep["u"].shape == (101, 241)

    gf = fhr.Grid1D(-12.0, 12.0, 481, 1.0, 400)
    xf = gf.x()
    st = fhr.fd_solve(0.1 * np.exp(-xf * xf), p, gf, output_stride=4)
    fd = st["u"][-1, ::2]
    rel = np.linalg.norm(rep["u"][-1] - fd) / np.linalg.norm(fd)
    assert rel < 1e-2


def test_shape_errors():
    g = fhr.Grid1D(-5.0, 5.0, 51, 1.0, 10)
    with pytest.raises(fhr.Error):
        fhr.fd_solve(np.zeros(10), fhr.ModelParams(), g)


def test_family_wave():
    w = fhr.family_wave(0.5)
    assert w["b"] == pytest.approx(math.sqrt(0.5) / 2 - 2, abs=1e-13)
    assert w["amplitude"] == pytest.approx(fhr.family_amplitude(0.5))
    z = np.linspace(-5, 5, 11)
    u = fhr.family_profile(0.5, z)
    assert np.all(np.diff(u) > 0)
    with pytest.raises(fhr.NoSolutionError):
        fhr.family_wave(0.01)
    assert 0.018 < fhr.family_admissibility_root() < 0.019


def test_run_command():
    code, csv = fhr.run("kernel", ["kernel.nx=3", "kernel.x_max=2"])
    assert code == 0
    rows = [r for r in csv.splitlines() if r and not r.startswith("#")]
    assert rows[0] == "x,t,H1,H2,H,K_eps,K_delta,err_est"
    assert len(rows) == 4
    with pytest.raises(fhr.ConfigError):
        fhr.run("kernel", ["model.zeta=1"])
