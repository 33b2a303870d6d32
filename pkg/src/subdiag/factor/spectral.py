"""Outer spectral factors on the torus.

``outer_factor_scalar`` builds the classical outer function with modulus
``w`` as ``exp`` of the analytic completion of ``log w``.  ``wilson_factor``
finds an analytic matrix function ``h`` with ``h* h = w`` by Wilson's
fixed-point iteration.  Both work on the model's node grid, so the
factorization identities hold exactly at the nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..algebra import AlgebraModel, Element, fk_det
from ..algebra import _linalg as la
from .results import FactorizationError

WILSON_TOL = 1e-10
WILSON_MAX_ITER = 200


@dataclass
class SpectralFactor:
    h: Element
    residual: float
    analytic_defect: float
    det_h: float
    det_phi_h: float
    iterations: int = 0
    converged: bool = True
    trace: list[float] = field(default_factory=list)

    @property
    def outer_gap(self) -> float:
        """Relative gap between ``Delta(h)`` and ``Delta(Phi(h))``."""
        return abs(self.det_h - self.det_phi_h) / max(self.det_h, 1e-300)

    def to_dict(self) -> dict:
        return {
            "residual": self.residual,
            "analytic_defect": self.analytic_defect,
            "det_h": self.det_h,
            "det_phi_h": self.det_phi_h,
            "outer_gap": self.outer_gap,
            "iterations": self.iterations,
            "converged": self.converged,
            "trace": list(self.trace),
        }


def require_torus(model: AlgebraModel, what: str) -> None:
    if not model.is_torus:
        raise ValueError(f"{what} requires a torus model, got {model.describe()}")


def analytic_part(values: np.ndarray, zeroth: float = 1.0) -> np.ndarray:
    """Keep frequencies ``1..band`` of node values and ``zeroth`` times frequency 0."""
    num = values.shape[0]
    spec = np.fft.fft(values, axis=0)
    band = (num - 1) // 2
    spec[band + 1 :] = 0.0
    spec[0] *= zeroth
    return np.fft.ifft(spec, axis=0)


def _negative_part(h: Element) -> float:
    neg = h.coefficients[: h.degree]
    top = float(np.abs(h.coefficients).max())
    return float(np.abs(neg).max(initial=0.0)) / top if top > 0 else 0.0


def outer_from_modulus(model: AlgebraModel, modulus_vals: np.ndarray) -> np.ndarray:
    """Node values of the outer function with the given positive modulus."""
    logs = np.log(modulus_vals)
    return np.exp(2.0 * analytic_part(logs.astype(complex), zeroth=0.5))


def outer_factor_scalar(w: Element) -> SpectralFactor:
    """Outer ``h`` with ``|h| = w`` on the nodes, for a nonnegative scalar weight ``w``."""
    model = w.model
    require_torus(model, "outer_factor_scalar")
    if model.n != 1:
        raise ValueError("outer_factor_scalar expects a scalar (n = 1) weight")
    vals = w.values()[:, 0, 0]
    top = float(np.abs(vals).max())
    if top == 0.0:
        raise FactorizationError("weight vanishes identically; Delta(w) = 0")
    if np.abs(vals.imag).max() > 1e-10 * top or vals.real.min() < -1e-12 * top:
        raise FactorizationError("weight must be real and nonnegative on the nodes")
    real = vals.real
    low = float(real.min())
    if low <= la.SIGMA_FLOOR * top:
        raise FactorizationError(
            f"weight hits the singular-value floor on the node grid (min {low:.3e}); Delta(w) = 0"
        )
    h_vals = outer_from_modulus(model, real)
    h = Element.from_values(model, h_vals[:, None, None])
    hv = h.values()[:, 0, 0]
    residual = float(np.abs(np.abs(hv) - real).max()) / top
    return SpectralFactor(
        h=h,
        residual=residual,
        analytic_defect=_negative_part(h),
        det_h=fk_det(h),
        det_phi_h=float(abs(h.coef(0)[0, 0])),
    )


def _wilson(model: AlgebraModel, s: np.ndarray, tol: float, max_iter: int):
    """Wilson iteration for ``s = psi psi*`` with ``psi`` analytic, on node values."""
    num, n, _ = s.shape
    eye = np.eye(n)
    s0 = la.hermitize(s.mean(axis=0))
    psi = np.broadcast_to(np.linalg.cholesky(s0), s.shape).astype(complex)
    scale = la.sup_norm(s)
    trace = []
    converged = False
    polish = 0
    it = 0
    for it in range(1, max_iter + 1):
        inv = np.linalg.inv(psi)
        g = inv @ s @ la.dagger(inv) + eye
        psi = psi @ analytic_part(g, zeroth=0.5)
        res = la.sup_norm(psi @ la.dagger(psi) - s) / scale
        trace.append(res)
        if converged:
            polish += 1
            # a couple of extra quadratic steps drive the residual to rounding level
            if polish >= 2 or res >= trace[-2]:
                break
        elif res < tol:
            converged = True
    return psi, it, converged, trace


def wilson_factor(w: Element, tol: float = WILSON_TOL, max_iter: int = WILSON_MAX_ITER) -> SpectralFactor:
    """Analytic ``h`` with ``h(θ)* h(θ) = w(θ)`` at every node and ``ĥ(0)`` positive definite."""
    model = w.model
    require_torus(model, "wilson_factor")
    vals = w.values()
    if la.hermitian_defect(vals) > 1e-10:
        raise FactorizationError("wilson_factor requires a Hermitian weight")
    vals = la.hermitize(vals)
    low = float(np.linalg.eigvalsh(vals).min())
    top = la.sup_norm(vals)
    if low <= la.SIGMA_FLOOR * max(top, 1e-300):
        raise FactorizationError(f"weight is not uniformly positive (minimal node eigenvalue {low:.3e})")
    # h* h = w  <=>  w^T = psi psi* with psi = h^T analytic
    psi, iters, ok, trace = _wilson(model, np.swapaxes(vals, -1, -2), tol, max_iter)
    if not ok:
        raise FactorizationError(
            f"Wilson iteration did not converge in {max_iter} steps (last residual {trace[-1]:.3e})"
        )
    h_vals = np.swapaxes(psi, -1, -2)
    h0 = h_vals.mean(axis=0)
    v, _, _ = la.polar(h0[None])
    h_vals = la.dagger(v[0]) @ h_vals
    h = Element.from_values(model, h_vals)
    hv = h.values()
    residual = la.sup_norm(la.dagger(hv) @ hv - vals) / top
    return SpectralFactor(
        h=h,
        residual=residual,
        analytic_defect=_negative_part(h),
        det_h=fk_det(h),
        det_phi_h=fk_det(Element.constant(model, h.coef(0))),
        iterations=iters,
        converged=ok,
        trace=trace,
    )
