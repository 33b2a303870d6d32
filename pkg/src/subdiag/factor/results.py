"""Result records shared by the factorization algorithms."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from ..algebra import Element
from ..algebra import _linalg as la


class FactorizationError(ValueError):
    """A factorization precondition failed or the numerics broke down."""


class SingularOperatorError(FactorizationError):
    def __init__(self, message: str, smallest: float):
        super().__init__(message)
        self.smallest = smallest


@dataclass(frozen=True)
class Residuals:
    reconstruction: float
    unitarity: float
    membership: float
    inverse_membership: float = math.nan

    def worst(self) -> float:
        vals = [self.reconstruction, self.unitarity, self.membership]
        if not math.isnan(self.inverse_membership):
            vals.append(self.inverse_membership)
        return max(vals)


@dataclass
class FactorizationResult:
    unitary: Element
    analytic: Element
    analytic_inverse: Element | None
    residuals: Residuals
    certificate: object | None = None
    info: dict = field(default_factory=dict)

    def __iter__(self):
        # ``u, h = result`` reads naturally at call sites
        return iter((self.unitary, self.analytic))

    def to_dict(self) -> dict:
        out = {"residuals": asdict(self.residuals), "info": dict(self.info)}
        if self.certificate is not None and hasattr(self.certificate, "to_dict"):
            out["certificate"] = self.certificate.to_dict()
        return out


@dataclass(frozen=True)
class OuterReport:
    left: bool
    right: bool
    bilateral: bool
    det_h: float
    det_phi_h: float
    det_verdict: bool
    rank_left: int
    rank_right: int
    rank_bilateral: int
    rank_full: int
    oracle: str
    in_A: bool
    note: str = ""

    @property
    def outer(self) -> bool:
        return self.left and self.right

    @property
    def agree(self) -> bool:
        """Determinant and subspace verdicts coincide (required when ``det_h > 0``)."""
        if self.det_h <= 0:
            return True
        return self.det_verdict == (self.left and self.right)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["outer"] = self.outer
        d["agree"] = self.agree
        return d


def relative_defect(diff: np.ndarray, ref: np.ndarray) -> float:
    scale = la.sup_norm(ref)
    return la.sup_norm(diff) / scale if scale > 0 else la.sup_norm(diff)


def unitarity_defect(u: np.ndarray) -> float:
    eye = np.eye(u.shape[-1])
    return max(la.sup_norm(la.dagger(u) @ u - eye), la.sup_norm(u @ la.dagger(u) - eye))


def membership_defect(x: Element) -> float:
    """Structural distance from ``A`` relative to the largest coefficient."""
    from ..algebra import in_A

    top = float(np.abs(x.coefficients).max())
    return in_A(x).defect / top if top > 0 else 0.0
