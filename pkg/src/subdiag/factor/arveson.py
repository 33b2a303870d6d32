"""Arveson factorization ``x = u a`` through a QR decomposition along the flag."""

from __future__ import annotations

import numpy as np

from ..algebra import AlgebraModel, Element
from ..algebra import _linalg as la
from .results import (
    FactorizationResult,
    Residuals,
    SingularOperatorError,
    membership_defect,
    relative_defect,
    unitarity_defect,
)


def require_matrix_model(model: AlgebraModel, what: str) -> None:
    if model.is_torus:
        raise ValueError(f"{what} requires a MatrixBlock model, got {model.describe()}")


def diagonal_phase(model: AlgebraModel, a: np.ndarray) -> np.ndarray:
    """Block diagonal unitary ``d`` making ``d* a`` have positive definite diagonal blocks.

    Works node-wise on a stack ``a`` of shape ``(K, n, n)``; torus models have a
    single block (the constants).
    """
    d = np.zeros_like(a)
    for sl in model.block_slices:
        u, _, _ = la.polar(a[:, sl, sl])
        d[:, sl, sl] = u
    return d


def normalize_phase(model: AlgebraModel, u: np.ndarray, h: np.ndarray, phi_h: np.ndarray):
    """Move the phase of ``Phi(h)`` from ``h`` onto ``u`` (``u h`` unchanged)."""
    d = diagonal_phase(model, phi_h[None])[0]
    return u @ d, la.dagger(d) @ h


def check_invertible(vals: np.ndarray, what: str) -> None:
    s = la.svdvals(vals)
    smax = float(s.max())
    smin = float(s.min())
    if smax == 0.0 or smin <= la.SIGMA_FLOOR * smax:
        raise SingularOperatorError(f"{what} is singular (smallest singular value {smin:.3e})", smin)


def arveson_factor(x: Element) -> FactorizationResult:
    """Factor an invertible ``x`` as ``u a`` with ``u`` unitary and ``a, a^{-1}`` in ``A``.

    The factor ``a`` is upper triangular up to a block diagonal unitary and
    is normalized so its diagonal blocks are positive definite (positive
    reals on the full flag), which makes the factorization unique.
    """
    model = x.model
    require_matrix_model(model, "arveson_factor")
    mat = x.matrix
    check_invertible(mat[None], "x")
    q, r = np.linalg.qr(mat)
    d = np.diagonal(r)
    ph = d / np.abs(d)
    q = q * ph
    r = ph.conj()[:, None] * r
    u, a = normalize_phase(model, q, r, np.where(model.d_mask, r, 0.0))
    a = np.where(model.a_mask, a, 0.0)
    a_inv = np.linalg.inv(a)
    unitary = Element(model, u)
    analytic = Element(model, a)
    inverse = Element(model, a_inv)
    residuals = Residuals(
        reconstruction=relative_defect(u @ a - mat, mat),
        unitarity=unitarity_defect(u),
        membership=membership_defect(analytic),
        inverse_membership=membership_defect(inverse),
    )
    return FactorizationResult(unitary, analytic, inverse, residuals, info={"method": "qr"})
