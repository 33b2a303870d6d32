"""Szegő factorization ``w = u h`` for arbitrary positive exponents."""

from __future__ import annotations

import math

import numpy as np

from ..algebra import AlgebraModel, Element
from ..algebra import _linalg as la
from .arveson import check_invertible, normalize_phase
from .projection import szego_factor_projection
from .results import FactorizationResult, Residuals, membership_defect, relative_defect, unitarity_defect
from .spectral import outer_from_modulus, wilson_factor


def split_count(p: float, q: float) -> int:
    """Smallest ``n`` with ``n p >= 2`` and ``n q >= 2`` (1 when both are at least 2)."""
    low = min(p, q)
    if low <= 0:
        raise ValueError(f"exponents must be positive, got p={p}, q={q}")
    if low >= 2:
        return 1
    return math.ceil(2.0 / low - 1e-12)


def _base_factor(model: AlgebraModel, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``L^2`` factorization of node values ``w`` into ``(u, h)``."""
    if not model.is_torus:
        res = szego_factor_projection(Element(model, w[0]))
        return res.unitary.values(), res.analytic.values()
    if model.n == 1:
        h = outer_from_modulus(model, np.abs(w[:, 0, 0]))[:, None, None]
        return w / h, h
    wsq = Element.from_values(model, la.hermitize(la.dagger(w) @ w), trim=False)
    h = wilson_factor(wsq).h.values()
    return w @ np.linalg.inv(h), h


def phi_values(model: AlgebraModel, vals: np.ndarray) -> np.ndarray:
    """``Phi`` applied to node values, as a single ``n x n`` matrix."""
    if model.is_torus:
        return vals.mean(axis=0)
    return np.where(model.d_mask, vals[0], 0.0)


def szego_factor(w: Element, p: float = 2.0, q: float = 2.0, nodes: int | None = None) -> FactorizationResult:
    """Factor an invertible ``w`` as ``u h`` with ``u`` unitary and ``h, h^{-1}`` analytic.

    When ``min(p, q) < 2`` the polar factor is split as
    ``w = v|w|^{1/n} |w|^{1/n} ... |w|^{1/n}`` and the pieces are factored from
    the right, each time absorbing the previous unitary, so that every step
    acts on an operator in ``L^{np}`` with inverse in ``L^{nq}``.  The result
    is normalized so that ``Phi(h)`` has positive definite diagonal blocks.

    On the torus the outer factor is usually an infinite series.  Passing a
    larger odd ``nodes`` computes it on a finer grid (the result then lives
    on that grid), which shrinks the truncation error reported in
    ``residuals.membership``.
    """
    if nodes is not None and w.model.is_torus and nodes != w.model.num_nodes:
        w = w.on(w.model.with_nodes(nodes))
    model = w.model
    vals = w.values()
    check_invertible(vals, "w")
    splits = split_count(p, q)
    if splits == 1:
        pieces = [vals]
    else:
        v, mod, _ = la.polar(vals)
        root = la.psd_power(mod, 1.0 / splits)
        pieces = [v @ root] + [root] * (splits - 1)

    carry = np.broadcast_to(np.eye(model.n), vals.shape)
    factors = []
    for piece in reversed(pieces):
        carry, h_k = _base_factor(model, piece @ carry)
        factors.append(h_k)
    factors.reverse()
    h = factors[0]
    for h_k in factors[1:]:
        h = h @ h_k
    if model.is_torus:
        u, h = _torus_phase(carry, h)
    else:
        u, h = normalize_phase(model, carry, h, phi_values(model, h))
    h_inv = np.linalg.inv(h)

    unitary = Element.from_values(model, u)
    analytic = Element.from_values(model, h)
    inverse = Element.from_values(model, h_inv)
    residuals = Residuals(
        reconstruction=relative_defect(unitary.values() @ analytic.values() - vals, vals),
        unitarity=unitarity_defect(unitary.values()),
        membership=membership_defect(analytic),
        inverse_membership=membership_defect(inverse),
    )
    return FactorizationResult(
        unitary, analytic, inverse, residuals, info={"method": "szego", "splits": splits, "p": p, "q": q}
    )


def _torus_phase(u: np.ndarray, h: np.ndarray):
    d, _, _ = la.polar(h.mean(axis=0)[None])
    return u @ d, la.dagger(d) @ h
