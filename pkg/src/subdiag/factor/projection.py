"""Szegő factorization of an invertible matrix by orthogonal projection in ``L^2``.

Let ``x`` be the projection of ``w`` onto ``[w A_0]_2`` and ``y = w - x``.
Then ``|y|`` lies in ``D``, ``L^2 = [y A_0] ⊕ [y D] ⊕ [y A_0*]``, and with
``y = u |y|`` the operator ``h = u* w`` and its inverse both lie in ``A``.
Every one of these facts is measured and returned as a certificate.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from ..algebra import Element
from ..algebra import _linalg as la
from ..algebra.membership import a0_positions, a_positions
from .arveson import check_invertible, require_matrix_model
from .results import (
    FactorizationError,
    FactorizationResult,
    Residuals,
    membership_defect,
    relative_defect,
    unitarity_defect,
)

GRAM_CONDITION_LIMIT = 1e12
CERTIFICATE_TOL = 1e-8


@dataclass(frozen=True)
class ProjectionCertificate:
    modulus_in_D: float
    orthogonality: float
    h_in_A: float
    h_inverse_in_A: float
    phi_product: float
    left_rank: int
    dim_A: int
    gram_condition: float

    @property
    def passed(self) -> bool:
        small = (self.modulus_in_D, self.orthogonality, self.h_in_A, self.h_inverse_in_A, self.phi_product)
        return all(v <= CERTIFICATE_TOL for v in small) and self.left_rank == self.dim_A

    def to_dict(self) -> dict:
        return {**asdict(self), "passed": self.passed}


def _inner(a: np.ndarray, b: np.ndarray) -> complex:
    """``<a, b> = tau(b* a)`` on ``M_n``."""
    return complex(np.vdot(b, a)) / a.shape[0]


def _right_products(y: np.ndarray, positions) -> np.ndarray:
    """Stack of ``y e_ij``: column ``j`` holds column ``i`` of ``y``."""
    n = y.shape[0]
    out = np.zeros((len(positions), n, n), dtype=complex)
    for k, (i, j) in enumerate(positions):
        out[k, :, j] = y[:, i]
    return out


def _normalized_rows(stack: np.ndarray) -> np.ndarray:
    rows = stack.reshape(stack.shape[0], stack.shape[1] * stack.shape[2])
    norms = np.linalg.norm(rows, axis=1, keepdims=True)
    return rows / np.where(norms > 0, norms, 1.0)


def _max_cross(a: np.ndarray, b: np.ndarray) -> float:
    if a.size == 0 or b.size == 0:
        return 0.0
    return float(np.abs(a.conj() @ b.T).max())


def left_span_rank(h: np.ndarray, model, rtol: float = 1e-10) -> int:
    return la.orthonormal_rank(_right_products(h, a_positions(model)).reshape(-1, h.size), rtol)


def szego_factor_projection(w: Element) -> FactorizationResult:
    """Factor ``w = u h`` following the ``L^2`` projection construction.

    Returns a :class:`FactorizationResult` whose ``certificate`` is a
    :class:`ProjectionCertificate`.
    """
    model = w.model
    require_matrix_model(model, "szego_factor_projection")
    wm = w.matrix
    check_invertible(wm[None], "w")
    n = model.n
    a0 = a0_positions(model)
    d_pos = [tuple(map(int, ij)) for ij in np.argwhere(model.d_mask)]

    gens = _right_products(wm, a0)
    if gens.shape[0]:
        gram = np.array([[_inner(gl, gk) for gl in gens] for gk in gens])
        rhs = np.array([_inner(wm, gk) for gk in gens])
        cond = float(np.linalg.cond(gram))
        if not np.isfinite(cond) or cond > GRAM_CONDITION_LIMIT:
            raise FactorizationError(f"projection Gram matrix is ill-conditioned (condition {cond:.3e})")
        coef = np.linalg.solve(gram, rhs)
        x = np.tensordot(coef, gens, axes=1)
    else:
        cond = 1.0
        x = np.zeros_like(wm)
    y = wm - x

    u, mod, full = la.polar(y[None])
    if not full:
        raise FactorizationError("projection residual y is rank deficient; numerical failure")
    u, mod = u[0], la.hermitize(mod[0])
    h = la.dagger(u) @ wm
    h_inv = np.linalg.inv(h)

    ynorm = la.sup_norm(y[None])
    modulus_in_D = float(np.abs(np.where(model.d_mask, 0.0, mod)).max(initial=0.0)) / ynorm
    a0_star = [(j, i) for i, j in a0]
    spans = [_normalized_rows(_right_products(y, pos)) for pos in (a0, d_pos, a0_star)]
    orth = max(_max_cross(spans[0], spans[1]), _max_cross(spans[0], spans[2]), _max_cross(spans[1], spans[2]))
    phi_h = np.where(model.d_mask, h, 0.0)
    phi_hinv = np.where(model.d_mask, h_inv, 0.0)
    h_el = Element(model, h)
    hinv_el = Element(model, h_inv)
    cert = ProjectionCertificate(
        modulus_in_D=modulus_in_D,
        orthogonality=orth,
        h_in_A=membership_defect(h_el),
        h_inverse_in_A=membership_defect(hinv_el),
        phi_product=float(np.abs(phi_h @ phi_hinv - np.eye(n)).max()),
        left_rank=left_span_rank(h, model),
        dim_A=model.dim_A,
        gram_condition=cond,
    )
    residuals = Residuals(
        reconstruction=relative_defect(u @ h - wm, wm),
        unitarity=unitarity_defect(u),
        membership=cert.h_in_A,
        inverse_membership=cert.h_inverse_in_A,
    )
    return FactorizationResult(
        Element(model, u), h_el, hinv_el, residuals, certificate=cert, info={"method": "projection"}
    )
