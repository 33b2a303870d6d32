"""Trace, quasi-norms, determinant and conditional expectation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _linalg as la
from .element import Element, _coef_from_grid, _eval_on_grid

# polynomial degree above which the torus determinant falls back to quadrature
ROOT_DEGREE_CAP = 256


def trace(x: Element) -> complex:
    """Normalized trace; for torus models the circle average of ``tr/n``.

    The node average of a degree ``d < K`` element is its zeroth coefficient,
    so the coefficient is read directly.
    """
    return complex(np.trace(x.coef(0))) / x.n


def phi(x: Element) -> Element:
    """Conditional expectation onto the diagonal ``D``."""
    model = x.model
    if model.is_torus:
        return Element.constant(model, x.coef(0))
    return Element(model, np.where(model.d_mask, x.matrix, 0.0))


def _check_p(p: float) -> float:
    p = float(p)
    if not p > 0:
        raise ValueError(f"exponent must be positive, got {p}")
    return p


def pnorm(x: Element, p: float) -> float:
    """``(tau(|x|^p))^{1/p}``; ``p = inf`` gives the operator sup-norm.

    Quasi-norm for ``p < 1``.  Torus models use node-wise singular values and
    the ``K``-node quadrature average.
    """
    p = _check_p(p)
    s = la.svdvals(x.values())
    if np.isinf(p):
        return float(s.max())
    smax = s.max()
    if smax == 0.0:
        return 0.0
    # scale out the largest singular value to keep s**p well inside range
    return float(smax * np.mean((s / smax) ** p) ** (1.0 / p))


def _log_det_matrix(vals: np.ndarray) -> tuple[float, bool]:
    s = la.svdvals(vals)
    smax = s.max()
    if smax == 0.0 or np.any(s <= la.SIGMA_FLOOR * smax):
        return -np.inf, True
    return float(np.mean(np.log(s))), False


def _log_det_torus_roots(x: Element) -> tuple[float, bool] | None:
    """Jensen-formula evaluation of ``tau(log|x|)`` for a trigonometric polynomial.

    ``z^{nd} det x(z)`` is a polynomial ``P`` of degree ``<= 2nd``; on the
    circle ``|P| = |det x|`` and ``int log|P| = log|lead| + sum log max(1, |r|)``.
    Returns ``None`` when the polynomial is too long for reliable roots.
    """
    n, d = x.n, x.degree
    m = n * d
    num = 2 * m + 1
    vals = _eval_on_grid(x.coefficients, num)
    dets = np.linalg.det(vals)
    # coefficient of z^(k+m) is the Fourier coefficient k of det x
    poly = _coef_from_grid(dets[:, None, None], m)[:, 0, 0]
    smax = la.svdvals(vals).max()
    scale = smax**n
    mags = np.abs(poly)
    live = np.nonzero(mags > 1e-13 * scale)[0] if scale > 0 else np.array([], dtype=int)
    if live.size == 0:
        return -np.inf, True
    lo, hi = int(live[0]), int(live[-1])
    core = poly[lo : hi + 1]
    if hi - lo > ROOT_DEGREE_CAP:
        return None
    lead = core[-1]
    roots = np.roots(core[::-1]) if hi > lo else np.array([])
    total = np.log(abs(lead)) + np.sum(np.log(np.maximum(1.0, np.abs(roots))))
    return float(total) / n, False


def log_det(x: Element) -> tuple[float, bool]:
    """``tau(log|x|)`` and a flag set when ``x`` is numerically singular."""
    if not x.model.is_torus or x.degree == 0:
        return _log_det_matrix(x.values()[:1] if x.degree == 0 else x.values())
    out = _log_det_torus_roots(x)
    if out is not None:
        return out
    vals = x.values()
    s = la.svdvals(vals)
    smax = s.max()
    if smax == 0.0 or np.all(s[:, -1] <= la.SIGMA_FLOOR * smax):
        return -np.inf, True
    if np.any(s <= la.SIGMA_FLOOR * smax):
        # a node sits on a zero; the integrable singularity is floored
        s = np.maximum(s, la.SIGMA_FLOOR * smax)
    return float(np.mean(np.log(s))), False


def fk_det(x: Element, with_flag: bool = False):
    """Fuglede-Kadison determinant ``exp(tau(log|x|))``.

    Singular operators (singular values below ``1e-14`` times the largest)
    return 0.  With ``with_flag=True`` returns ``(value, degenerate)``.
    """
    ld, flag = log_det(x)
    value = 0.0 if flag else float(np.exp(ld))
    return (value, flag) if with_flag else value


def det_as_limit(x: Element, p_grid) -> list[float]:
    """``||x||_p`` along a strictly decreasing grid of exponents."""
    grid = [float(p) for p in p_grid]
    if not grid:
        raise ValueError("p_grid must not be empty")
    if any(p <= 0 for p in grid) or any(b >= a for a, b in zip(grid, grid[1:])):
        raise ValueError(f"p_grid must be positive and strictly decreasing, got {grid}")
    return [pnorm(x, p) for p in grid]


@dataclass(frozen=True)
class PolarData:
    unitary_part: Element
    modulus: Element
    full_rank: bool
    residual: float


def polar(x: Element) -> PolarData:
    """Polar decomposition ``x = u |x|``.

    For rank-deficient ``x`` the unitary part is the partial isometry and
    ``full_rank`` is False.
    """
    vals = x.values()
    u, mod, full = la.polar(vals)
    residual = la.sup_norm(u @ mod - vals)
    return PolarData(
        unitary_part=Element.from_values(x.model, u),
        modulus=Element.from_values(x.model, la.hermitize(mod)),
        full_rank=full,
        residual=residual,
    )


def dyadic(p: float, max_level: int = 30) -> Fraction:
    """Return ``p`` as ``k / 2**m``; raise if it is not such a number."""
    frac = Fraction(p).limit_denominator(2**max_level)
    den = frac.denominator
    if den & (den - 1) or abs(float(frac) - float(p)) > 1e-15:
        raise ValueError(f"{p} is not a dyadic rational k/2^m with m <= {max_level}")
    return frac


@dataclass
class NewtonResult:
    root: Element
    steps: int
    converged: bool
    monotone: bool
    monotone_after_first: bool
    # smallest eigenvalue of x_m - x_{m+1} over the final stage
    min_decrease: list[float] = field(default_factory=list)


def _heron(c: np.ndarray, x: np.ndarray, tol: float, max_iter: int):
    """Iterate ``x <- (x + c / x) / 2`` on spectra until the sup-difference drops below tol."""
    gaps = []
    for step in range(1, max_iter + 1):
        nxt = 0.5 * (x + c / x)
        gaps.append(float((x - nxt).min()))
        diff = float(np.abs(nxt - x).max())
        x = nxt
        if diff < tol * max(1.0, float(np.abs(x).max())):
            return x, step, True, gaps
    return x, max_iter, False, gaps


def newton_power_root(
    b: Element,
    p: float = 1.0,
    eps: float = 0.0,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> NewtonResult:
    """Compute ``(b + eps)^{p/2}`` with Heron iterations only.

    ``p = k / 2**m`` is dyadic.  The start ``x_1 = (b + eps)^p`` is assembled
    from ``m`` square roots of ``b + eps`` followed by the integer power
    ``k``, and the final stage ``x_{m+1} = (x_m + (b + eps)^p x_m^{-1}) / 2``
    produces ``(b + eps)^{p/2}``.

    Every iterate lies in the commutative algebra generated by ``b``, so the
    iteration runs on the spectrum of ``b + eps`` (node-wise on the torus).
    Iterating with full matrices instead is numerically unstable: rounding
    breaks commutativity and the error grows once the condition number
    exceeds a few dozen.  ``min_decrease`` records the smallest eigenvalue
    of ``x_m - x_{m+1}`` at each step of the final stage.
    """
    vals = b.values()
    if la.hermitian_defect(vals) > 1e-12:
        raise ValueError("newton_power_root requires a Hermitian argument")
    if not 0 < p <= 1:
        raise ValueError(f"exponent must lie in (0, 1], got {p}")
    frac = dyadic(p)
    lam, vec = np.linalg.eigh(la.hermitize(vals + eps * np.eye(b.n)))
    if lam.min() <= 0:
        raise ValueError("b + eps must be positive definite")
    base = lam
    for _ in range(frac.denominator.bit_length() - 1):
        base, _, ok, _ = _heron(base, base.copy(), tol, max_iter)
        if not ok:
            raise RuntimeError("inner square root did not converge")
    base = base**frac.numerator
    root, steps, ok, gaps = _heron(base, base.copy(), tol, max_iter)
    slack = -1e-12 * max(1.0, float(base.max()))
    root_vals = (vec * root[:, None, :]) @ la.dagger(vec)
    return NewtonResult(
        root=Element.from_values(b.model, root_vals),
        steps=steps,
        converged=ok,
        monotone=all(g >= slack for g in gaps),
        monotone_after_first=all(g >= slack for g in gaps[1:]),
        min_decrease=gaps,
    )
