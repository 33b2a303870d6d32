"""Numerical Szegő formula ``Delta(w) = inf{tau(w |a|^p) : a in A, Delta(Phi(a)) >= 1}``.

Matrix model only.  Any ``a`` in a block upper triangular algebra can be
written ``d t`` with ``d`` a block diagonal unitary and ``t`` upper
triangular (QR inside each diagonal block).  Since ``|a| = |t|`` and
``Delta(Phi(a)) = Delta(Phi(t))``, the search runs over upper triangular
``t`` for every flag.  The constraint is active at the optimum (scaling
``a`` down lowers the objective), so the diagonal is parameterized as
``exp(l)`` with ``sum(l) = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .algebra import AlgebraModel, Element, fk_det
from .algebra import _linalg as la
from .algebra.random import rng_from

FD_STEP = 1e-6
DEFAULT_STARTS = 8
DEFAULT_BUDGET = 400
BRUTE_CHUNK = 1024


class SzegoError(ValueError):
    pass


@dataclass
class SzegoReport:
    det_w: float
    inf_estimate: float
    oracle_value: float | None
    relative_gap: float
    p: float
    iterations: int
    minimizer: Element
    constraint: float
    bound_violation: float
    starts: int
    start_values: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "det_w": self.det_w,
            "inf_estimate": self.inf_estimate,
            "oracle_value": self.oracle_value,
            "relative_gap": self.relative_gap,
            "p": self.p,
            "iterations": self.iterations,
            "constraint": self.constraint,
            "bound_violation": self.bound_violation,
            "starts": self.starts,
            "start_values": list(self.start_values),
        }


def _check(w: Element, p: float) -> np.ndarray:
    if w.model.is_torus:
        raise SzegoError("the Szegő optimizer works on MatrixBlock models only")
    if not p > 0:
        raise SzegoError(f"p must be positive, got {p}")
    mat = w.matrix
    if la.hermitian_defect(mat[None]) > 1e-10 * max(1.0, la.sup_norm(mat[None])):
        raise SzegoError("w must be Hermitian")
    mat = la.hermitize(mat)
    ev = np.linalg.eigvalsh(mat)
    if ev.min() < -1e-12 * max(1.0, abs(ev).max()):
        raise SzegoError(f"w must be positive semidefinite (smallest eigenvalue {ev.min():.3e})")
    return mat


class _Problem:
    """Objective ``tau(w |t|^p)`` over upper triangular ``t`` with ``prod |t_ii| = 1``."""

    def __init__(self, w: np.ndarray, p: float):
        self.w = w
        self.p = p
        n = w.shape[0]
        self.n = n
        self.upper = np.triu_indices(n, 1)
        # orthonormal basis of the sum-zero subspace for the log-diagonal
        q, _ = np.linalg.qr(np.eye(n) - 1.0 / n)
        self.diag_basis = q[:, : n - 1]
        self.dim = (n - 1) + 2 * len(self.upper[0])
        self.lowest = math.inf

    def build(self, params: np.ndarray) -> np.ndarray:
        """Upper triangular matrices for a stack of parameter vectors ``(m, dim)``."""
        n = self.n
        m = params.shape[0]
        k = n - 1
        off = len(self.upper[0])
        logd = params[:, :k] @ self.diag_basis.T
        t = np.zeros((m, n, n), dtype=complex)
        idx = np.arange(n)
        t[:, idx, idx] = np.exp(logd)
        t[:, self.upper[0], self.upper[1]] = params[:, k : k + off] + 1j * params[:, k + off :]
        return t

    def values(self, t: np.ndarray) -> np.ndarray:
        ev, vec = np.linalg.eigh(la.hermitize(la.dagger(t) @ t))
        powered = (vec * np.clip(ev, 0.0, None)[:, None, :] ** (self.p / 2.0)) @ la.dagger(vec)
        vals = np.einsum("ij,mji->m", self.w, powered).real / self.n
        self.lowest = min(self.lowest, float(vals.min()))
        return vals

    def __call__(self, params: np.ndarray) -> float:
        return float(self.values(self.build(params[None]))[0])

    def grad(self, params: np.ndarray) -> np.ndarray:
        eye = np.eye(self.dim) * FD_STEP
        pts = np.concatenate([params + eye, params - eye])
        v = self.values(self.build(pts))
        return (v[: self.dim] - v[self.dim :]) / (2 * FD_STEP)


def _descend(prob: _Problem, x0: np.ndarray, budget: int):
    """Quasi-Newton descent (L-BFGS) on the constraint-eliminated parameters."""
    res = minimize(
        prob,
        x0,
        jac=prob.grad,
        method="L-BFGS-B",
        options={"maxiter": budget, "ftol": 1e-16, "gtol": 1e-12, "maxcor": 30},
    )
    return res.x, float(res.fun), int(res.nit)


def szego_infimum(
    w: Element,
    p: float = 2.0,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    starts: int = DEFAULT_STARTS,
) -> SzegoReport:
    """Estimate ``inf tau(w |a|^p)`` over ``a`` in ``A`` with ``Delta(Phi(a)) = 1``.

    Start 0 is ``a = 1``; the others are random perturbations drawn from
    ``default_rng([seed, start])``.  ``budget`` caps the descent iterations
    per start.  ``bound_violation`` is the largest amount by which any
    evaluated feasible point undercut ``Delta(w)``, relative to
    ``max(1, Delta(w))`` (zero when the one-sided bound holds).
    """
    mat = _check(w, p)
    model = w.model
    prob = _Problem(mat, p)
    best = None
    total = 0
    values = []
    for s in range(starts):
        x0 = np.zeros(prob.dim) if s == 0 else 0.5 * rng_from([seed, s]).standard_normal(prob.dim)
        x, f, it = _descend(prob, x0, budget)
        total += it
        values.append(f)
        if best is None or f < best[1]:
            best = (x, f)
    t = prob.build(best[0][None])[0]
    minimizer = Element(model, t)
    det_w = fk_det(w)
    oracle = closed_form_p2(w)[0] if p == 2 and model.is_full_flag and det_w > 0 else None
    d = np.abs(np.diagonal(t))
    return SzegoReport(
        det_w=det_w,
        inf_estimate=best[1],
        oracle_value=oracle,
        relative_gap=(best[1] - det_w) / max(det_w, la.SIGMA_FLOOR),
        p=p,
        iterations=total,
        minimizer=minimizer,
        constraint=abs(float(np.exp(np.mean(np.log(d)))) - 1.0),
        bound_violation=max(0.0, det_w - prob.lowest) / max(1.0, det_w),
        starts=starts,
        start_values=values,
    )


def closed_form_p2(w: Element) -> tuple[float, Element]:
    """Exact ``p = 2`` infimum on the full flag: ``(det w)^{1/n}`` and its minimizer.

    With ``w = c c*``, ``c`` upper triangular, ``tau(w a* a) = ||a c||_2^2``
    is minimized by ``a = lambda c^{-1}``, ``lambda = prod(c_ii)^{1/n}``.
    """
    model = w.model
    if model.is_torus or not model.is_full_flag:
        raise SzegoError("closed_form_p2 needs a fully triangular MatrixBlock model (all blocks of size 1)")
    mat = _check(w, 2.0)
    try:
        c = la.upper_cholesky(mat)
    except np.linalg.LinAlgError as exc:
        raise SzegoError("closed_form_p2 needs a positive definite w") from exc
    diag = np.diagonal(c).real
    lam = float(np.exp(np.mean(np.log(diag))))
    a = lam * np.linalg.inv(c)
    a = np.triu(a)
    return lam**2, Element(model, a)


def _sample_chunk(prob: _Problem, rng: np.random.Generator, size: int) -> np.ndarray:
    n = prob.n
    k = n - 1
    off = len(prob.upper[0])
    params = np.empty((size, prob.dim))
    params[:, :k] = rng.standard_normal((size, k))
    scale = 10.0 ** rng.uniform(-3.0, 0.0, size=(size, 1))
    params[:, k:] = scale * rng.standard_normal((size, 2 * off)) / math.sqrt(2.0)
    return params


def brute_force_infimum(w: Element, p: float = 2.0, samples: int = 10_000, seed: int = 0) -> float:
    """Smallest ``tau(w |a|^p)`` over randomly sampled feasible ``a``.

    Samples come in chunks of 1024, chunk ``c`` drawn from
    ``default_rng([seed, c])``, so a larger ``samples`` only appends points
    and the result is nonincreasing in ``samples``.
    """
    mat = _check(w, p)
    prob = _Problem(mat, p)
    best = math.inf
    done = 0
    chunk = 0
    while done < samples:
        rng = rng_from([seed, chunk])
        params = _sample_chunk(prob, rng, BRUTE_CHUNK)[: samples - done]
        if chunk == 0:
            params[0] = 0.0  # a = 1 is always feasible
        best = min(best, float(prob.values(prob.build(params)).min()))
        done += params.shape[0]
        chunk += 1
    return best

