"""Membership tests for ``A``, ``A_0 = A ∩ ker Phi`` and ``D``.

``in_A`` has two independent routes.  The structural route inspects the
sparsity pattern (block upper triangular entries, or vanishing negative
Fourier coefficients).  The dual route enumerates a basis of ``A_0`` and
evaluates the trace pairings ``tau(x a)``, which all vanish exactly on ``A``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .element import Element
from .model import AlgebraModel


@dataclass(frozen=True)
class Membership:
    member: bool
    defect: float

    def __bool__(self):
        return self.member


def a_positions(model: AlgebraModel) -> list[tuple[int, int]]:
    """Matrix-unit positions spanning ``A`` (MatrixBlock)."""
    return [tuple(map(int, ij)) for ij in np.argwhere(model.a_mask)]


def a0_positions(model: AlgebraModel) -> list[tuple[int, int]]:
    """Matrix-unit positions spanning ``A_0`` (MatrixBlock)."""
    return [tuple(map(int, ij)) for ij in np.argwhere(model.a_mask & ~model.d_mask)]


def matrix_unit(model: AlgebraModel, i: int, j: int, k: int = 0) -> Element:
    """``z^k e_ij`` (``k`` must be 0 in matrix models)."""
    mat = np.zeros((model.n, model.n), dtype=complex)
    mat[i, j] = 1.0
    if model.is_torus:
        return Element(model, {k: mat})
    if k:
        raise ValueError("frequencies exist only in torus models")
    return Element(model, mat)


def a0_basis(model: AlgebraModel, max_degree: int | None = None) -> list[Element]:
    """Basis of ``A_0``; torus models are truncated at ``max_degree`` (default: the band)."""
    if not model.is_torus:
        return [matrix_unit(model, i, j) for i, j in a0_positions(model)]
    top = model.band if max_degree is None else max_degree
    n = model.n
    return [matrix_unit(model, i, j, k) for k in range(1, top + 1) for i in range(n) for j in range(n)]


def a_basis(model: AlgebraModel, max_degree: int | None = None) -> list[Element]:
    if not model.is_torus:
        return [matrix_unit(model, i, j) for i, j in a_positions(model)]
    top = model.band if max_degree is None else max_degree
    n = model.n
    return [matrix_unit(model, i, j, k) for k in range(0, top + 1) for i in range(n) for j in range(n)]


def _structural_defect(x: Element) -> float:
    if x.model.is_torus:
        neg = x.coefficients[: x.degree]
        return float(np.abs(neg).max(initial=0.0))
    return float(np.abs(np.where(x.model.a_mask, 0.0, x.matrix)).max(initial=0.0))


def _dual_defect(x: Element) -> float:
    model = x.model
    if not model.is_torus:
        from .functionals import trace

        pairs = [abs(trace(x @ a)) for a in a0_basis(model)]
        return max(pairs, default=0.0)
    # tau(x z^k e_ij) by node quadrature, for every k = 1..band at once
    vals = x.values()
    nodes = model.num_nodes
    ks = np.arange(1, model.band + 1)
    phases = np.exp(1j * np.outer(ks, model.thetas))
    # pairing[k, i, j] = mean_theta x_ji(theta) e^{ik theta} / n
    pairing = np.einsum("kt,tji->kij", phases, vals) / (nodes * model.n)
    return float(np.abs(pairing).max(initial=0.0))


def in_A(x: Element, mode: str = "structural", tol: float | None = None) -> Membership:
    """Is ``x`` in ``A``?  ``mode`` is ``"structural"`` or ``"dual"``."""
    tol = x.model.tol if tol is None else tol
    if mode == "structural":
        defect = _structural_defect(x)
    elif mode == "dual":
        defect = _dual_defect(x)
    else:
        raise ValueError(f"unknown membership mode {mode!r}")
    return Membership(defect <= tol, defect)


def in_A0(x: Element, mode: str = "structural", tol: float | None = None) -> Membership:
    from .functionals import phi

    tol = x.model.tol if tol is None else tol
    base = in_A(x, mode, tol)
    defect = max(base.defect, float(np.abs(phi(x).coefficients).max()))
    return Membership(defect <= tol, defect)


def in_D(x: Element, tol: float | None = None) -> Membership:
    tol = x.model.tol if tol is None else tol
    if x.model.is_torus:
        c = np.array(x.coefficients)
        c[x.degree] = 0.0
        defect = float(np.abs(c).max(initial=0.0))
    else:
        defect = float(np.abs(np.where(x.model.d_mask, 0.0, x.matrix)).max(initial=0.0))
    return Membership(defect <= tol, defect)
