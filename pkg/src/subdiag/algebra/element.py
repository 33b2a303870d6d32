"""Immutable elements of an :class:`AlgebraModel`.

Every element stores a centered coefficient stack ``coef`` of shape
``(2d + 1, n, n)`` holding the Fourier coefficients for frequencies
``-d..d``.  Matrix-model elements are the special case ``d = 0``, which
lets the scalar functionals treat both models as "matrices sampled on a
grid of nodes" (one node for ``MatrixBlock``).
"""

from __future__ import annotations

import warnings
from collections.abc import Mapping

import numpy as np

from .model import AlgebraModel, ModelMismatch

# relative size below which outer Fourier coefficients are dropped
TRIM_RTOL = 1e-14


class DegreeGrowthWarning(RuntimeWarning):
    """A torus product outgrew the node grid and was moved to a finer grid."""


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def _eval_on_grid(coef: np.ndarray, num: int) -> np.ndarray:
    d = (coef.shape[0] - 1) // 2
    if num < 2 * d + 1:
        raise ValueError(f"grid of {num} nodes cannot resolve degree {d}")
    spec = np.zeros((num,) + coef.shape[1:], dtype=complex)
    ks = np.arange(-d, d + 1) % num
    spec[ks] = coef
    return num * np.fft.ifft(spec, axis=0)


def _coef_from_grid(values: np.ndarray, band: int) -> np.ndarray:
    num = values.shape[0]
    spec = np.fft.fft(values, axis=0) / num
    ks = np.arange(-band, band + 1) % num
    return spec[ks]


def _trim(coef: np.ndarray, rtol: float = TRIM_RTOL) -> np.ndarray:
    d = (coef.shape[0] - 1) // 2
    mags = np.abs(coef).reshape(coef.shape[0], -1).max(axis=1)
    top = mags.max()
    if top == 0.0:
        return coef[d : d + 1]
    keep = mags > rtol * top
    # smallest symmetric range containing every kept frequency
    idx = np.nonzero(keep)[0] - d
    e = int(np.abs(idx).max())
    return coef[d - e : d + e + 1]


class Element:
    """A member of ``M`` for a given model.

    Parameters
    ----------
    model : AlgebraModel
    data : array_like or mapping
        ``n x n`` matrix for ``MatrixBlock``.  For torus models either a
        mapping ``{k: matrix}`` (scalars allowed when ``n == 1``) or a
        centered coefficient stack of shape ``(2d + 1, n, n)``.
    """

    __slots__ = ("model", "_coef", "_values")

    def __init__(self, model: AlgebraModel, data):
        self.model = model
        n = model.n
        if not model.is_torus:
            mat = np.asarray(data, dtype=complex)
            if mat.shape == (1, n, n):
                mat = mat[0]
            if mat.shape != (n, n):
                raise ValueError(f"expected a {n}x{n} matrix, got shape {mat.shape}")
            coef = mat[None]
        elif isinstance(data, Mapping):
            items = {int(k): np.asarray(v, dtype=complex).reshape(n, n) for k, v in data.items()}
            d = max((abs(k) for k in items), default=0)
            coef = np.zeros((2 * d + 1, n, n), dtype=complex)
            for k, v in items.items():
                coef[k + d] = v
        else:
            coef = np.asarray(data, dtype=complex)
            if coef.ndim == 1 and n == 1:
                coef = coef[:, None, None]
            if coef.ndim != 3 or coef.shape[1:] != (n, n) or coef.shape[0] % 2 == 0:
                raise ValueError(f"bad coefficient stack shape {coef.shape}")
        if model.is_torus and (coef.shape[0] - 1) // 2 > model.band:
            raise ValueError(
                f"degree {(coef.shape[0] - 1) // 2} exceeds the grid band {model.band} of {model.describe()}"
            )
        self._coef = _freeze(coef)
        self._values = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_values(cls, model: AlgebraModel, values, trim: bool = True) -> Element:
        """Build the element interpolating ``values`` on the model's nodes."""
        values = np.asarray(values, dtype=complex)
        if values.shape != (model.num_nodes, model.n, model.n):
            raise ValueError(f"expected node values of shape {(model.num_nodes, model.n, model.n)}, got {values.shape}")
        if not model.is_torus:
            return cls(model, values[0])
        coef = _coef_from_grid(values, model.band)
        return cls(model, _trim(coef) if trim else coef)

    @classmethod
    def identity(cls, model: AlgebraModel) -> Element:
        return cls(model, np.eye(model.n)[None])

    @classmethod
    def zero(cls, model: AlgebraModel) -> Element:
        return cls(model, np.zeros((1, model.n, model.n)))

    @classmethod
    def coordinate(cls, model: AlgebraModel) -> Element:
        """The identity function ``z`` times the unit (torus models)."""
        if not model.is_torus:
            raise ValueError("the coordinate function exists only in torus models")
        return cls(model, {1: np.eye(model.n)})

    @classmethod
    def constant(cls, model: AlgebraModel, mat) -> Element:
        return cls(model, np.asarray(mat, dtype=complex).reshape(1, model.n, model.n))

    # -- accessors ------------------------------------------------------------

    @property
    def coefficients(self) -> np.ndarray:
        """Centered coefficient stack, frequencies ``-degree..degree``."""
        return self._coef

    @property
    def degree(self) -> int:
        return (self._coef.shape[0] - 1) // 2

    @property
    def n(self) -> int:
        return self.model.n

    @property
    def matrix(self) -> np.ndarray:
        if self.model.is_torus:
            raise ValueError("matrix view requires a MatrixBlock element")
        return self._coef[0]

    def coef(self, k: int) -> np.ndarray:
        d = self.degree
        if abs(k) > d:
            return np.zeros((self.n, self.n), dtype=complex)
        return self._coef[k + d]

    def items(self):
        """Nonzero ``(k, matrix)`` pairs in increasing frequency."""
        d = self.degree
        for i, c in enumerate(self._coef):
            if np.any(c != 0):
                yield i - d, c

    def values(self) -> np.ndarray:
        """Node values, shape ``(K, n, n)``; ``K = 1`` for matrix models."""
        if self._values is None:
            if self.model.is_torus:
                vals = _eval_on_grid(self._coef, self.model.num_nodes)
            else:
                vals = np.array(self._coef)
            vals.setflags(write=False)
            self._values = vals
        return self._values

    def __call__(self, theta):
        """Evaluate a torus element at arbitrary angles.

        A scalar angle gives an ``n x n`` matrix, an array of angles a stack.
        """
        th = np.asarray(theta, dtype=float)
        ks = np.arange(-self.degree, self.degree + 1)
        phases = np.exp(1j * np.outer(th.ravel(), ks))
        out = np.einsum("tk,kij->tij", phases, self._coef)
        return out[0] if th.ndim == 0 else out

    # -- arithmetic -----------------------------------------------------------

    def _lift(self, other: Element) -> tuple[AlgebraModel, np.ndarray, np.ndarray]:
        if not isinstance(other, Element):
            raise TypeError(f"cannot combine Element with {type(other).__name__}")
        model = self.model.join(other.model)
        d = max(self.degree, other.degree)
        return model, self._padded(d), other._padded(d)

    def _padded(self, d: int) -> np.ndarray:
        e = d - self.degree
        if e == 0:
            return self._coef
        return np.pad(self._coef, ((e, e), (0, 0), (0, 0)))

    def __add__(self, other):
        if np.isscalar(other):
            return self + other * Element.identity(self.model)
        model, a, b = self._lift(other)
        return Element(model, a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Element(self.model, -self._coef)

    def __mul__(self, scalar):
        if isinstance(scalar, Element):
            raise TypeError("use @ for the algebra product")
        return Element(self.model, complex(scalar) * self._coef)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / complex(scalar))

    def __matmul__(self, other: Element) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        model = self.model.join(other.model)
        if not model.is_torus:
            return Element(model, self.matrix @ other.matrix)
        d = self.degree + other.degree
        num = 2 * d + 1
        prod = _eval_on_grid(self._coef, num) @ _eval_on_grid(other._coef, num)
        coef = _coef_from_grid(prod, d)
        if d > model.band:
            k = model.quad_nodes
            while (k - 1) // 2 < d:
                k = 2 * k + 1
            warnings.warn(
                f"product degree {d} exceeds band {model.band}; moving to K={k} nodes",
                DegreeGrowthWarning,
                stacklevel=2,
            )
            model = model.with_nodes(k)
        return Element(model, coef)

    @property
    def H(self) -> Element:
        """Adjoint ``x*``."""
        flipped = self._coef[::-1].conj().transpose(0, 2, 1)
        return Element(self.model, flipped)

    def inv(self) -> Element:
        """Pointwise inverse (interpolated on the node grid for torus models)."""
        return Element.from_values(self.model, np.linalg.inv(self.values()))

    def on(self, model: AlgebraModel) -> Element:
        """Re-home this element in a compatible (typically finer) model."""
        if not self.model.compatible(model):
            raise ModelMismatch(f"cannot move {self.model.describe()} element to {model.describe()}")
        return Element(model, self._coef)

    # -- comparison -----------------------------------------------------------

    def distance(self, other: Element) -> float:
        """Largest entrywise coefficient difference."""
        _, a, b = self._lift(other)
        return float(np.abs(a - b).max())

    def isclose(self, other: Element, tol: float | None = None) -> bool:
        tol = self.model.tol if tol is None else tol
        return self.distance(other) <= tol

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        try:
            return self.isclose(other)
        except ModelMismatch:
            return False

    __hash__ = None

    def __repr__(self):
        if not self.model.is_torus:
            return f"Element({self.model.describe()}, {np.array2string(self.matrix, precision=4)})"
        return f"Element({self.model.describe()}, degree={self.degree})"
