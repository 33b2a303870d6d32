"""Node-wise dense linear algebra on stacks of shape ``(K, n, n)``."""

from __future__ import annotations

import numpy as np

# relative singular value floor below which an operator counts as singular
SIGMA_FLOOR = 1e-14


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def hermitize(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + dagger(a))


def hermitian_defect(a: np.ndarray) -> float:
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    return float(np.abs(a - dagger(a)).max(initial=0.0)) / scale


def svdvals(a: np.ndarray) -> np.ndarray:
    if a.shape[-1] == 1 and a.shape[-2] == 1:
        return np.abs(a[..., 0])
    return np.linalg.svd(a, compute_uv=False)


def herm_apply(a: np.ndarray, fn) -> np.ndarray:
    """Spectral calculus ``fn(a)`` for a stack of Hermitian matrices."""
    w, v = np.linalg.eigh(hermitize(a))
    return (v * fn(w)[..., None, :]) @ dagger(v)


def psd_power(a: np.ndarray, s: float) -> np.ndarray:
    """``a**s`` for positive semidefinite ``a``; tiny negative eigenvalues are clipped."""
    return herm_apply(a, lambda w: np.clip(w, 0.0, None) ** s)


def modulus(a: np.ndarray) -> np.ndarray:
    """``|a| = (a* a)^{1/2}`` node-wise, via the SVD."""
    _, s, vh = np.linalg.svd(a)
    return (dagger(vh) * s[..., None, :]) @ vh


def polar(a: np.ndarray, floor: float = SIGMA_FLOOR):
    """Polar decomposition ``a = u |a|`` node-wise.

    Returns ``(u, mod, full_rank)``.  Where ``a`` is rank deficient the
    unitary factor is replaced by the partial isometry onto the range.
    """
    uu, s, vh = np.linalg.svd(a)
    smax = float(s.max(initial=0.0))
    keep = s > floor * smax if smax > 0 else np.zeros_like(s, dtype=bool)
    full = bool(keep.all())
    mod = (dagger(vh) * s[..., None, :]) @ vh
    u = (uu * keep[..., None, :]) @ vh
    return u, mod, full


def sup_norm(a: np.ndarray) -> float:
    """Largest operator norm over the nodes."""
    if a.size == 0:
        return 0.0
    return float(svdvals(a).max())


def upper_cholesky(w: np.ndarray) -> np.ndarray:
    """``w = c c*`` with ``c`` upper triangular and positive diagonal."""
    flip = w[::-1, ::-1]
    low = np.linalg.cholesky(hermitize(flip))
    return low[::-1, ::-1]


def orthonormal_rank(vectors: np.ndarray, rtol: float) -> int:
    """Rank of the row span of ``vectors`` by singular value thresholding."""
    if vectors.size == 0:
        return 0
    s = np.linalg.svd(vectors, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rtol * s[0]))
