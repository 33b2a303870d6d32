"""Riesz factorization ``x = y z`` with ``||y||_q ||z||_r`` close to ``||x||_p``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..algebra import Element, fk_det, in_A, pnorm
from ..algebra import _linalg as la
from .results import FactorizationError, membership_defect, relative_defect
from .szego import szego_factor

EXPONENT_RTOL = 1e-12
MAX_SHRINK = 80


@dataclass
class RieszResult:
    """Factors ``y, z`` of ``x`` with their norms.  Unpacks as ``y, z``."""

    y: Element
    z: Element
    p: float
    q: float
    r: float
    eps: float
    norm_x: float
    norm_y: float
    norm_z: float
    reconstruction: float
    membership_y: float
    membership_z: float
    pathway: str
    info: dict = field(default_factory=dict)

    def __iter__(self):
        return iter((self.y, self.z))

    @property
    def product(self) -> float:
        return self.norm_y * self.norm_z

    @property
    def slack(self) -> float:
        """``||y||_q ||z||_r - ||x||_p`` (at most ``eps`` on the eps pathway)."""
        return self.product - self.norm_x

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "r": self.r,
            "eps": self.eps,
            "pathway": self.pathway,
            "norm_x": self.norm_x,
            "norm_y": self.norm_y,
            "norm_z": self.norm_z,
            "product": self.product,
            "slack": self.slack,
            "reconstruction": self.reconstruction,
            "membership_y": self.membership_y,
            "membership_z": self.membership_z,
            **self.info,
        }


def conjugate_exponent(q: float, r: float, p: float | None = None) -> float:
    """``p`` with ``1/p = 1/q + 1/r``; checks a supplied ``p`` for consistency."""
    if q <= 0 or r <= 0:
        raise ValueError(f"exponents must be positive, got q={q}, r={r}")
    inv = 1.0 / q + 1.0 / r
    if inv == 0:
        raise ValueError("q and r cannot both be infinite")
    implied = 1.0 / inv
    if p is not None and abs(p - implied) > EXPONENT_RTOL * implied:
        raise ValueError(f"exponent mismatch: 1/p = {1 / p:.15g} but 1/q + 1/r = {inv:.15g}")
    return implied


def _regularized_modulus(vals: np.ndarray, p: float, bound: float, eps: float):
    """``(x*x + delta)^{1/2}`` with ``||.||_p <= bound``, shrinking ``delta`` from ``eps``."""
    gram = la.hermitize(la.dagger(vals) @ vals)
    eye = np.eye(vals.shape[-1])
    delta = eps
    for _ in range(MAX_SHRINK):
        w = la.psd_power(gram + delta * eye, 0.5)
        if _node_pnorm(w, p) <= bound:
            return w, delta
        delta /= 4.0
    raise FactorizationError("could not regularize |x| within the requested eps")


def _node_pnorm(vals: np.ndarray, p: float) -> float:
    s = la.svdvals(vals)
    if math.isinf(p):
        return float(s.max())
    return float(np.mean(np.sum(s**p, axis=-1) / s.shape[-1]) ** (1.0 / p))


def riesz_factor(
    x: Element,
    q: float,
    r: float,
    eps: float = 1e-2,
    p: float | None = None,
    pathway: str = "eps",
    nodes: int | None = None,
) -> RieszResult:
    """Factor analytic ``x`` as ``y z`` with ``y, z`` analytic.

    Parameters
    ----------
    x : Element
        Must lie in ``A``.
    q, r : float
        Target exponents, possibly ``inf``; ``p`` is fixed by ``1/p = 1/q + 1/r``.
    eps : float
        Allowed excess of ``||y||_q ||z||_r`` over ``||x||_p`` (``pathway="eps"``).
    pathway : {"eps", "outer"}
        ``"eps"`` regularizes ``|x|`` as ``(x*x + delta)^{1/2}`` and works for
        any analytic ``x``.  ``"outer"`` needs ``Delta(x) > 0`` and factors
        ``|x|`` itself, attaining ``||y||_q ||z||_r = ||x||_p``.
    nodes : int, optional
        Refined working grid for torus models, see :func:`szego_factor`.

    Notes
    -----
    With ``x = v w`` and ``w^{p/r} = u z`` (Szegő), ``y = v w^{p/q} u``.  Then
    ``y z = x``, ``||y||_q <= ||w||_p^{p/q}`` and ``||z||_r = ||w||_p^{p/r}``.
    The regularization level ``delta`` is searched downward from ``eps``
    until ``||w||_p <= ||x||_p + eps``: a fixed ``delta = eps`` only gives a
    slack of order ``sqrt(eps)``.
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    p = conjugate_exponent(q, r, p)
    member = in_A(x)
    if not member:
        raise FactorizationError(f"x is not in A (membership defect {member.defect:.3e})")
    if nodes is not None and x.model.is_torus and nodes != x.model.num_nodes:
        x = x.on(x.model.with_nodes(nodes))
    model = x.model
    vals = x.values()
    norm_x = pnorm(x, p)
    info: dict = {}

    if math.isinf(q) or math.isinf(r):
        one = Element.identity(model)
        y, z = (one, x) if math.isinf(q) else (x, one)
        pathway = "trivial"
    else:
        if pathway == "eps":
            w, delta = _regularized_modulus(vals, p, norm_x + eps, eps)
            v = vals @ np.linalg.inv(w)
            info["delta"] = delta
        elif pathway == "outer":
            det, flag = fk_det(x, with_flag=True)
            if det <= 0 or flag:
                raise FactorizationError("the attained factorization needs Delta(x) > 0")
            v, w, full = la.polar(vals)
            if not full:
                raise FactorizationError("|x| vanishes at a node; refine the grid or use pathway='eps'")
        else:
            raise ValueError(f"unknown pathway {pathway!r}")
        base = Element.from_values(model, la.psd_power(w, p / r), trim=False)
        fac = szego_factor(base, r, math.inf)
        u_vals = fac.unitary.values()
        y = Element.from_values(model, v @ la.psd_power(w, p / q) @ u_vals)
        z = fac.analytic
        info["szego_splits"] = fac.info["splits"]

    recon = relative_defect(y.values() @ z.values() - vals, vals)
    return RieszResult(
        y=y,
        z=z,
        p=p,
        q=q,
        r=r,
        eps=eps,
        norm_x=norm_x,
        norm_y=pnorm(y, q),
        norm_z=pnorm(z, r),
        reconstruction=recon,
        membership_y=membership_defect(y),
        membership_z=membership_defect(z),
        pathway=pathway,
        info=info,
    )
