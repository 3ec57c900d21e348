"""Lyubeznik numbers of the vertex of the affine cone over Proj(R/I).

lambda_{i,j} is the dimension of the stable part of the Frobenius action on
the degree-0 piece of Ext^{n+1-i}(Ext^{n+1-j}(R/I, R), R), for
0 <= i, j <= d + 1 with d = dim Proj(R/I); other cells are 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .errors import EmptyScheme, ImproperIdeal
from .frobenius import FrobeniusPipeline
from .groebner import buchberger
from .ring import Ideal, PolyRingCtx
from .stable import rank_sequence, stable_dimension


def krull_dimension(I: Ideal) -> int:
    """dim R/I: largest set of variables containing the support of no lead monomial."""
    ctx = I.ctx
    if I.is_zero():
        return ctx.nvars
    gb = buchberger(list(I.generators))
    leads = [m for _, m in gb.leads]
    if any(sum(m) == 0 for m in leads):
        raise ImproperIdeal("the ideal contains a unit")
    supports = [frozenset(k for k, e in enumerate(m) if e) for m in leads]
    for size in range(ctx.nvars, -1, -1):
        for subset in combinations(range(ctx.nvars), size):
            s = set(subset)
            if all(not sup <= s for sup in supports):
                return size
    return 0


@dataclass(frozen=True)
class ConeInput:
    ring: PolyRingCtx
    ideal: Ideal
    d: int = field(init=False)

    def __post_init__(self):
        if self.ideal.ctx != self.ring:
            raise ValueError("ideal does not live in the given ring")
        dim = krull_dimension(self.ideal)
        if dim == 0:
            raise EmptyScheme("Proj(R/I) is empty: R/I has Krull dimension 0")
        object.__setattr__(self, "d", dim - 1)

    @classmethod
    def from_generators(cls, ring: PolyRingCtx, gens) -> ConeInput:
        return cls(ring, Ideal(ring, tuple(gens)))

    @property
    def n(self) -> int:
        return self.ring.n

    def cells(self):
        for i in range(self.d + 2):
            for j in range(self.d + 2):
                yield i, j


@dataclass(frozen=True)
class IntTable:
    """(d+2) x (d+2) table of non-negative integers indexed by (i, j)."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if 0 <= i < self.size and 0 <= j < self.size:
            return self.entries[i][j]
        return 0

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {(i, j): v for i, row in enumerate(self.entries) for j, v in enumerate(row) if v}

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def first_difference(self, other: IntTable) -> tuple[int, int] | None:
        size = max(self.size, other.size)
        for i in range(size):
            for j in range(size):
                if self[i, j] != other[i, j]:
                    return i, j
        return None


class LyubeznikTable(IntTable):
    pass


class M0Table(IntTable):
    pass


class ConeComputation:
    """All cells of one cone input, sharing resolutions and chain maps."""

    def __init__(self, cone: ConeInput, minimal: bool = True):
        self.cone = cone
        self.pipeline = FrobeniusPipeline(cone.ideal, minimal=minimal)

    def in_range(self, i: int, j: int) -> bool:
        return 0 <= i <= self.cone.d + 1 and 0 <= j <= self.cone.d + 1

    def lyubeznik_number(self, i: int, j: int) -> int:
        if not self.in_range(i, j):
            return 0
        return stable_dimension(self.pipeline.f0(i, j))

    def m0_dimension(self, i: int, j: int) -> int:
        if not self.in_range(i, j):
            return 0
        return self.pipeline.m0_dimension(i, j)

    def rank_sequence(self, i: int, j: int) -> list[int]:
        if not self.in_range(i, j):
            return []
        return rank_sequence(self.pipeline.f0(i, j))

    def _table(self, cell: Callable[[int, int], int], cls, cells=None):
        size = self.cone.d + 2
        rows = []
        for i in range(size):
            row = []
            for j in range(size):
                if cells is not None and (i, j) not in cells:
                    row.append(0)
                else:
                    row.append(cell(i, j))
            rows.append(tuple(row))
        return cls(tuple(rows))

    def lyubeznik_table(self, cells=None) -> LyubeznikTable:
        return self._table(self.lyubeznik_number, LyubeznikTable, cells)

    def m0_table(self, cells=None) -> M0Table:
        return self._table(self.m0_dimension, M0Table, cells)


def lyubeznik_number(c: ConeInput, i: int, j: int) -> int:
    return ConeComputation(c).lyubeznik_number(i, j)


def lyubeznik_table(c: ConeInput, minimal: bool = True) -> LyubeznikTable:
    return ConeComputation(c, minimal=minimal).lyubeznik_table()


def m0_dimension(c: ConeInput, i: int, j: int) -> int:
    return ConeComputation(c).m0_dimension(i, j)


def m0_table(c: ConeInput) -> M0Table:
    return ConeComputation(c).m0_table()
