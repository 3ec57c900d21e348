"""Dimension of the stable part of a p-linear endomorphism of F_p^r."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import linalg


@dataclass
class PLinearEndo:
    """Matrix of a p-linear map on a finite-dimensional F_p-space.

    Over F_p the Frobenius twist of scalars is trivial, so the map is linear
    and ``semilinear_exp`` is bookkeeping only.
    """

    matrix: np.ndarray
    p: int
    basis: Any = None
    semilinear_exp: int = field(default=0)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.int64)
        if m.size == 0:
            m = m.reshape(0, 0)
        self.matrix = m % self.p
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise ValueError("endomorphism matrix must be square")
        if not self.semilinear_exp:
            self.semilinear_exp = self.p

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


def rank_sequence(f0: PLinearEndo, length: int | None = None) -> list[int]:
    """[rank A, rank A^2, ...] up to A^length (default: the size)."""
    r = f0.size
    length = r if length is None else length
    out = []
    P = np.eye(r, dtype=np.int64)
    for _ in range(length):
        P = linalg.matmul(P, f0.matrix, f0.p)
        out.append(linalg.rank(P, f0.p))
    return out


def stable_dimension(f0: PLinearEndo) -> int:
    """rank(A^r): the images f^k(V) stop shrinking after r = dim V steps."""
    r = f0.size
    if r == 0:
        return 0
    return linalg.rank(linalg.matpow(f0.matrix, r, f0.p), f0.p)
