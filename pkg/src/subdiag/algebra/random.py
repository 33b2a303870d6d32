"""Seeded random elements of a prescribed class."""

from __future__ import annotations

import numpy as np

from . import _linalg as la
from .element import Element
from .model import AlgebraModel

CLASSES = ("M", "A", "A0", "D", "positive_invertible")


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(complex_gaussian(rng, (n, n)))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _frequencies(model: AlgebraModel, cls: str) -> range:
    top = model.degree
    return {
        "M": range(-top, top + 1),
        "A": range(0, top + 1),
        "A0": range(1, top + 1),
        "D": range(0, 1),
    }[cls]


def random_element(model: AlgebraModel, cls: str = "M", seed=None) -> Element:
    """Draw an element of ``M``, ``A``, ``A0``, ``D`` or a positive invertible one.

    Entries are standard complex Gaussians restricted to the class pattern.
    ``positive_invertible`` elements have spectrum in ``[1, 1e3]`` (matrix
    model: Haar unitary and a log-uniform spectrum; torus model: a Hermitian
    trigonometric polynomial kept inside ``[c, 19 c]`` at every angle).
    """
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}; expected one of {CLASSES}")
    rng = rng_from(seed)
    n = model.n
    if cls == "positive_invertible":
        return _positive_invertible(model, rng)
    if not model.is_torus:
        mask = {
            "M": np.ones((n, n), dtype=bool),
            "A": model.a_mask,
            "A0": model.a_mask & ~model.d_mask,
            "D": model.d_mask,
        }[cls]
        return Element(model, np.where(mask, complex_gaussian(rng, (n, n)), 0.0))
    data = {k: complex_gaussian(rng, (n, n)) for k in _frequencies(model, cls)}
    return Element(model, data)


def _positive_invertible(model: AlgebraModel, rng: np.random.Generator) -> Element:
    n = model.n
    if not model.is_torus:
        u = haar_unitary(rng, n)
        spectrum = 10.0 ** rng.uniform(0.0, 3.0, size=n)
        return Element(model, la.hermitize((u * spectrum) @ u.conj().T))
    g = random_element(model, "M", rng)
    h = 0.5 * (g + g.H)
    # sum of coefficient operator norms bounds sup_theta ||h(theta)||
    bound = sum(float(np.linalg.norm(c, 2)) for c in h.coefficients)
    t = 0.9
    level = 10.0 ** rng.uniform(0.0, 1.0)
    return (Element.identity(model) + (t / bound) * h) * (level / (1.0 - t))
