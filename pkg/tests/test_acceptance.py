"""Acceptance gate.

Each test runs one criterion at its stated size and tolerance and prints a
single ``[PASS]``/``[FAIL]`` line.  ``python tests/test_acceptance.py`` runs
the whole gate outside pytest.
"""

from __future__ import annotations

import math
import subprocess
import sys
import time
import warnings

import numpy as np
import pytest
from scipy.linalg import fractional_matrix_power

from subdiag.algebra import (
    AlgebraModel,
    DegreeGrowthWarning,
    Element,
    det_as_limit,
    fk_det,
    in_A,
    newton_power_root,
    phi,
    pnorm,
    random_element,
)
from subdiag.cli.suites import (
    _counterexample,
    _outer_sample,
    random_outer_polynomial,
    random_root_polynomial,
)
from subdiag.factor import (
    arveson_factor,
    is_outer,
    outer_factor_scalar,
    riesz_factor,
    szego_factor_projection,
    wilson_factor,
)
from subdiag.szego_opt import closed_form_p2, szego_infimum

MATRIX = AlgebraModel.matrix_block([1, 1, 2])
TORUS = AlgebraModel.torus(2, 4)
SMALL_P = (0.25, 0.375, 0.5, 0.75)
DYADIC_P = (1.0, 0.5, 0.75, 0.375, 0.25, 0.3125, 0.125)


def _line(number, title: str, ok: bool, detail: str) -> None:
    msg = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    capman = _CAPTURE.get("capsys")
    if capman is not None:
        with capman.disabled():
            print("\n" + msg)
    else:
        print(msg)


_CAPTURE: dict = {}


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    _CAPTURE["capsys"] = capsys
    yield
    _CAPTURE.pop("capsys", None)


def _analytic_samples(seed: int, count: int = 500):
    rng = np.random.default_rng(seed)
    for model in (MATRIX, TORUS):
        for _ in range(count):
            yield model, random_element(model, "A", rng)


def test_01_contractivity():
    start = time.perf_counter()
    worst = 0.0
    for _, a in _analytic_samples(101):
        pa = phi(a)
        for p in SMALL_P:
            worst = max(worst, pnorm(pa, p) / pnorm(a, p) - 1.0)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 10.0
    _line(1, "contractivity of Phi for p < 1", ok, f"max excess {worst:.2e}, {elapsed:.1f}s")
    assert ok


def test_02_jensen():
    worst = 0.0
    for _, a in _analytic_samples(102):
        worst = max(worst, fk_det(phi(a)) / fk_det(a) - 1.0)
    ok = worst <= 1e-9
    _line(2, "Jensen inequality", ok, f"max excess {worst:.2e}")
    assert ok


def test_03_newton():
    rng = np.random.default_rng(103)
    limit = mono = 0.0
    converged = True
    for i in range(100):
        b = random_element(MATRIX, "positive_invertible", rng)
        p = DYADIC_P[i % len(DYADIC_P)]
        res = newton_power_root(b, p)
        oracle = fractional_matrix_power(b.matrix, p / 2.0)
        converged &= res.converged
        limit = max(limit, float(np.abs(res.root.matrix - oracle).max()) / max(1.0, float(np.abs(oracle).max())))
        mono = max(mono, max(0.0, -min(res.min_decrease, default=0.0)))
    ok = converged and limit <= 1e-10 and mono <= 1e-10
    _line(3, "Newton iteration limit and monotonicity", ok, f"limit err {limit:.2e}, increase {mono:.2e}")
    assert ok


def test_04_arveson():
    rng = np.random.default_rng(104)
    worst = 0.0
    inverse_ok = True
    for _ in range(200):
        res = arveson_factor(random_element(MATRIX, "M", rng))
        worst = max(worst, res.residuals.worst())
        inverse_ok &= bool(in_A(res.analytic_inverse))
    ok = worst <= 1e-10 and inverse_ok
    _line(4, "Arveson/QR factorization", ok, f"worst residual {worst:.2e}")
    assert ok


def test_05_projection():
    model = AlgebraModel.full_flag(3)
    rng = np.random.default_rng(105)
    worst = 0.0
    rank_ok = True
    for _ in range(100):
        cert = szego_factor_projection(random_element(model, "M", rng)).certificate
        worst = max(worst, cert.modulus_in_D, cert.orthogonality, cert.phi_product)
        rank_ok &= cert.left_rank == cert.dim_A
    ok = worst <= 1e-8 and rank_ok
    _line(5, "projection Szego certificate", ok, f"worst defect {worst:.2e}, ranks full: {rank_ok}")
    assert ok


def test_06_riesz():
    rng = np.random.default_rng(106)
    scalar = AlgebraModel.torus(1, 4)
    recon = bound = attained = 0.0
    for _ in range(20):
        for model in (MATRIX, scalar):
            if model.is_torus:
                x, nodes = random_root_polynomial(model, rng), 1025
            else:
                x, nodes = random_element(model, "A", rng), None
            for p, q, r in ((1.0, 2.0, 2.0), (0.5, 1.0, 1.0), (2.0 / 3.0, 1.0, 2.0)):
                for eps in (1e-1, 1e-2, 1e-3):
                    res = riesz_factor(x, q, r, eps, p=p, nodes=nodes)
                    recon = max(recon, res.reconstruction)
                    bound = max(bound, res.product - (res.norm_x + eps))
                res = riesz_factor(x, q, r, p=p, pathway="outer", nodes=nodes)
                recon = max(recon, res.reconstruction)
                attained = max(attained, abs(res.slack) / res.norm_x)
    ok = recon <= 1e-8 and bound <= 1e-8 and attained <= 1e-6
    _line(6, "Riesz factorization", ok, f"recon {recon:.2e}, bound excess {bound:.2e}, attained gap {attained:.2e}")
    assert ok


def test_07_outer_criterion():
    rng = np.random.default_rng(107)
    disagreements = 0
    for i in range(200):
        disagreements += not is_outer(_outer_sample(MATRIX, rng, i)).agree
    ok = disagreements == 0
    _line(7, "determinant vs rank outer verdicts", ok, f"{disagreements} disagreements in 200")
    assert ok


def test_08_counterexample():
    rep = is_outer(_counterexample())
    ok = rep.bilateral and not rep.left and not rep.right and rep.det_h > 0 and rep.det_phi_h == 0.0
    _line(8, "bilateral outer with Delta(Phi(h)) = 0", ok, f"Delta(h) = {rep.det_h:.6f}, Delta(Phi(h)) = {rep.det_phi_h}")
    assert ok


def test_09_scalar_outer():
    w = Element(AlgebraModel.torus(1, 2, 65), {-1: -0.5, 0: 1.25, 1: -0.5})
    h = outer_factor_scalar(w).h
    golden = float(np.abs(np.array([h.coef(k)[0, 0] for k in range(3)]) - [1.0, -1.0, 0.25]).max())
    det_err = abs(fk_det(w) - 1.0)
    big = AlgebraModel.torus(1, 1, 2**16 + 1)
    hb = outer_factor_scalar(Element(big, {-1: 1.0, 0: 2.0, 1: 1.0})).h
    boundary = float(np.abs(np.array([hb.coef(k)[0, 0] for k in range(3)]) - [1.0, 2.0, 1.0]).max())
    ok = golden <= 1e-8 and det_err <= 1e-8 and boundary <= 1e-4
    _line(9, "scalar outer factor", ok, f"golden {golden:.2e}, Delta(w) err {det_err:.2e}, boundary zero {boundary:.2e}")
    assert ok


def test_10_wilson():
    rng = np.random.default_rng(110)
    resid = gap = 0.0
    for i in range(50):
        n, deg = 1 + i % 3, 1 + i % 4
        model = AlgebraModel.torus(n, 2 * deg, 129)
        q = random_outer_polynomial(model, rng, deg)
        res = wilson_factor(q.H @ q)
        resid, gap = max(resid, res.residual), max(gap, res.outer_gap)
    ok = resid <= 1e-8 and gap <= 1e-6
    _line(10, "matrix spectral factorization", ok, f"h*h residual {resid:.2e}, det gap {gap:.2e}")
    assert ok


def test_11_szego_formula():
    rng = np.random.default_rng(111)
    p2 = other = bound = 0.0
    for i in range(12):
        w = random_element(AlgebraModel.full_flag(2 + i % 3), "positive_invertible", rng)
        oracle, _ = closed_form_p2(w)
        rep = szego_infimum(w, 2.0, seed=i)
        p2 = max(p2, abs(rep.inf_estimate - oracle) / oracle)
        bound = max(bound, rep.bound_violation)
        for p in (1.0, 4.0):
            rep = szego_infimum(w, p, seed=i)
            other = max(other, abs(rep.relative_gap))
            bound = max(bound, rep.bound_violation)
    ok = p2 <= 1e-4 and other <= 1e-2 and bound <= 1e-9
    _line(11, "Szego formula", ok, f"p=2 gap {p2:.2e}, p=1,4 gap {other:.2e}, bound violation {bound:.2e}")
    assert ok


def test_12_det_limit():
    rng = np.random.default_rng(112)
    rise = final = 0.0
    for _ in range(100):
        x = random_element(MATRIX, "M", rng)
        seq = det_as_limit(x, [1.0, 0.1, 0.01, 0.001])
        rise = max(rise, max(b - a for a, b in zip(seq, seq[1:])))
        final = max(final, abs(seq[-1] / fk_det(x) - 1.0))
    ok = rise <= 0.0 and final <= 1e-2
    _line(12, "p-norms decrease to Delta", ok, f"max rise {rise:.2e}, final rel err {final:.2e}")
    assert ok


def test_13_verify_all_runtime():
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "subdiag", "verify", "--suite", "all"], capture_output=True, text=True
    )
    elapsed = time.perf_counter() - start
    ok = proc.returncode == 0 and elapsed < 120.0
    _line("13", "verify --suite all", ok, f"exit {proc.returncode}, {elapsed:.1f}s")
    assert ok, proc.stdout + proc.stderr


if __name__ == "__main__":
    warnings.simplefilter("ignore", DegreeGrowthWarning)
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
