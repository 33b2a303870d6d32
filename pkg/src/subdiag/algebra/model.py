"""Concrete finite subdiagonal algebra models.

Two families are supported:

``MatrixBlock``
    ``M = M_n`` with the normalized trace ``tr/n``.  A flag of block sizes
    fixes ``A`` (block upper triangular matrices) and ``D`` (block diagonal
    matrices); ``Phi`` keeps the diagonal blocks.

``TorusMatrix`` / ``TorusScalar``
    ``M = L^inf(T; M_n)``, ``A`` the analytic matrix functions, ``D`` the
    constants and ``Phi`` the zeroth Fourier coefficient.  Elements are
    trigonometric polynomials sampled on ``K`` uniform nodes; an element may
    carry any frequency up to the grid band ``(K - 1) // 2``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np


class Kind(str, enum.Enum):
    MATRIX_BLOCK = "MatrixBlock"
    TORUS_MATRIX = "TorusMatrix"
    TORUS_SCALAR = "TorusScalar"


class ModelMismatch(ValueError):
    """Operands live in incompatible algebra models."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class AlgebraModel:
    kind: Kind
    n: int
    blocks: tuple[int, ...] | None = None
    degree: int | None = None
    quad_nodes: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"matrix dimension must be positive, got {self.n}")
        if self.kind is Kind.MATRIX_BLOCK:
            if not self.blocks or any(b < 1 for b in self.blocks):
                raise ValueError(f"blocks must be positive integers, got {self.blocks}")
            if sum(self.blocks) != self.n:
                raise ValueError(f"blocks {self.blocks} do not sum to n={self.n}")
            if self.degree is not None or self.quad_nodes is not None:
                raise ValueError("matrix models carry no degree or quadrature nodes")
            return
        if self.kind is Kind.TORUS_SCALAR and self.n != 1:
            raise ValueError("TorusScalar requires n = 1")
        if self.blocks is not None:
            raise ValueError("torus models carry no block flag")
        if self.degree is None or self.degree < 0:
            raise ValueError(f"degree must be a nonnegative integer, got {self.degree}")
        if self.quad_nodes is None or self.quad_nodes < 4 * self.degree + 1:
            raise ValueError(
                f"quad_nodes={self.quad_nodes} must be at least 4*degree+1={4 * self.degree + 1}"
            )
        if self.quad_nodes % 2 == 0:
            raise ValueError(f"quad_nodes must be odd, got {self.quad_nodes}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def matrix_block(cls, blocks) -> AlgebraModel:
        blocks = tuple(int(b) for b in blocks)
        return cls(Kind.MATRIX_BLOCK, sum(blocks), blocks=blocks)

    @classmethod
    def full_flag(cls, n: int) -> AlgebraModel:
        """Upper triangular matrices over the diagonal ones."""
        return cls.matrix_block([1] * n)

    @classmethod
    def degenerate(cls, n: int) -> AlgebraModel:
        """``A = M = D = M_n``."""
        return cls.matrix_block([n])

    @classmethod
    def torus(cls, n: int, degree: int, quad_nodes: int | None = None) -> AlgebraModel:
        if quad_nodes is None:
            quad_nodes = 4 * degree + 1
        kind = Kind.TORUS_SCALAR if n == 1 else Kind.TORUS_MATRIX
        return cls(kind, n, degree=degree, quad_nodes=quad_nodes)

    # -- structure ----------------------------------------------------------

    @property
    def is_torus(self) -> bool:
        return self.kind is not Kind.MATRIX_BLOCK

    @property
    def tol(self) -> float:
        """Default equality / membership tolerance."""
        return 1e-10 if self.is_torus else 1e-12

    @property
    def num_nodes(self) -> int:
        return self.quad_nodes if self.is_torus else 1

    @property
    def band(self) -> int:
        """Largest frequency representable on the node grid (0 for matrices)."""
        return (self.quad_nodes - 1) // 2 if self.is_torus else 0

    @cached_property
    def block_labels(self) -> np.ndarray:
        if self.is_torus:
            return _readonly(np.zeros(self.n, dtype=int))
        return _readonly(np.repeat(np.arange(len(self.blocks)), self.blocks))

    @cached_property
    def block_slices(self) -> tuple[slice, ...]:
        if self.is_torus:
            return (slice(0, self.n),)
        edges = np.concatenate([[0], np.cumsum(self.blocks)])
        return tuple(slice(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]))

    @cached_property
    def a_mask(self) -> np.ndarray:
        """Entries allowed in a block upper triangular matrix."""
        lab = self.block_labels
        return _readonly(lab[:, None] <= lab[None, :])

    @cached_property
    def d_mask(self) -> np.ndarray:
        lab = self.block_labels
        return _readonly(lab[:, None] == lab[None, :])

    @property
    def dim_A(self) -> int:
        """Complex dimension of ``A`` (matrix models only)."""
        if self.is_torus:
            raise ValueError("A is infinite dimensional in the torus model")
        return int(self.a_mask.sum())

    @property
    def is_full_flag(self) -> bool:
        return not self.is_torus and all(b == 1 for b in self.blocks)

    @cached_property
    def thetas(self) -> np.ndarray:
        k = self.num_nodes
        return _readonly(2.0 * np.pi * np.arange(k) / k)

    # -- model algebra --------------------------------------------------------

    def compatible(self, other: AlgebraModel) -> bool:
        return self.kind is other.kind and self.n == other.n and self.blocks == other.blocks

    def join(self, other: AlgebraModel) -> AlgebraModel:
        """Smallest model holding elements of both operands."""
        if not self.compatible(other):
            raise ModelMismatch(f"incompatible models {self} and {other}")
        if self == other or not self.is_torus:
            return self
        return AlgebraModel(
            self.kind,
            self.n,
            degree=max(self.degree, other.degree),
            quad_nodes=max(self.quad_nodes, other.quad_nodes),
        )

    def with_nodes(self, quad_nodes: int) -> AlgebraModel:
        return AlgebraModel(self.kind, self.n, degree=self.degree, quad_nodes=quad_nodes)

    def describe(self) -> str:
        if self.is_torus:
            return f"{self.kind.value}(n={self.n}, N={self.degree}, K={self.quad_nodes})"
        return f"MatrixBlock(blocks={list(self.blocks)})"
