"""Degree-preserving maps between twisted free modules.

A :class:`GradedMatrix` with row twists ``a`` and column twists ``b`` is a
map ``⊕_c R(-b_c) -> ⊕_r R(-a_r)``; entry ``(r, c)`` is zero or homogeneous
of degree ``b_c - a_r``.
"""
from __future__ import annotations

from typing import Sequence

from .errors import ContextMismatch
from .ring import Polynomial, PolyRingCtx


class GradedMatrix:
    __slots__ = ("ctx", "entries", "row_twists", "col_twists")

    def __init__(
        self,
        ctx: PolyRingCtx,
        entries: Sequence[Sequence[Polynomial]],
        row_twists: Sequence[int],
        col_twists: Sequence[int],
        check: bool = True,
    ):
        self.ctx = ctx
        self.row_twists = tuple(int(a) for a in row_twists)
        self.col_twists = tuple(int(b) for b in col_twists)
        self.entries = tuple(tuple(row) for row in entries)
        if check:
            self._validate()

    def _validate(self) -> None:
        nr, nc = len(self.row_twists), len(self.col_twists)
        if len(self.entries) != nr or any(len(row) != nc for row in self.entries):
            raise ValueError("entries do not match twist vectors")
        for r, row in enumerate(self.entries):
            for c, f in enumerate(row):
                if f.ctx != self.ctx:
                    raise ContextMismatch(f"entry ({r}, {c}) lives in another ring")
                if f.is_zero():
                    continue
                want = self.col_twists[c] - self.row_twists[r]
                if not f.is_homogeneous() or f.degree() != want:
                    raise ValueError(
                        f"entry ({r}, {c}) = {f} is not homogeneous of degree {want}"
                    )

    @classmethod
    def zeros(cls, ctx, row_twists, col_twists) -> GradedMatrix:
        z = ctx.zero()
        return cls(ctx, [[z] * len(col_twists) for _ in row_twists], row_twists, col_twists, check=False)

    @classmethod
    def identity(cls, ctx, twists) -> GradedMatrix:
        z, one = ctx.zero(), ctx.one()
        k = len(twists)
        rows = [[one if r == c else z for c in range(k)] for r in range(k)]
        return cls(ctx, rows, twists, twists, check=False)

    @classmethod
    def from_columns(cls, ctx, columns: Sequence[Sequence[Polynomial]], row_twists, col_twists) -> GradedMatrix:
        nr = len(row_twists)
        rows = [[columns[c][r] for c in range(len(columns))] for r in range(nr)]
        return cls(ctx, rows, row_twists, col_twists)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_twists), len(self.col_twists)

    @property
    def nrows(self) -> int:
        return len(self.row_twists)

    @property
    def ncols(self) -> int:
        return len(self.col_twists)

    def __getitem__(self, rc: tuple[int, int]) -> Polynomial:
        r, c = rc
        return self.entries[r][c]

    def column(self, c: int) -> tuple[Polynomial, ...]:
        return tuple(row[c] for row in self.entries)

    def columns(self) -> list[tuple[Polynomial, ...]]:
        return [self.column(c) for c in range(self.ncols)]

    def is_zero(self) -> bool:
        return all(f.is_zero() for row in self.entries for f in row)

    def __matmul__(self, other: GradedMatrix) -> GradedMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        if self.col_twists != other.row_twists:
            raise ValueError("twist vectors do not match in composition")
        z = self.ctx.zero()
        out = []
        for r in range(self.nrows):
            row = self.entries[r]
            new = []
            for c in range(other.ncols):
                acc = z
                for k, f in enumerate(row):
                    if f:
                        g = other.entries[k][c]
                        if g:
                            acc = acc + f * g
                new.append(acc)
            out.append(new)
        return GradedMatrix(self.ctx, out, self.row_twists, other.col_twists, check=False)

    def __add__(self, other: GradedMatrix) -> GradedMatrix:
        if self.row_twists != other.row_twists or self.col_twists != other.col_twists:
            raise ValueError("twist vectors differ")
        rows = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        return GradedMatrix(self.ctx, rows, self.row_twists, self.col_twists, check=False)

    def __neg__(self) -> GradedMatrix:
        rows = [[-a for a in row] for row in self.entries]
        return GradedMatrix(self.ctx, rows, self.row_twists, self.col_twists, check=False)

    def __sub__(self, other: GradedMatrix) -> GradedMatrix:
        return self + (-other)

    def transpose(self) -> GradedMatrix:
        """Plain transpose with negated twists: the dual map Hom(-, R)."""
        rows = [list(self.column(c)) for c in range(self.ncols)]
        return GradedMatrix(
            self.ctx,
            rows,
            tuple(-b for b in self.col_twists),
            tuple(-a for a in self.row_twists),
            check=False,
        )

    def frobenius(self, e: int = 1) -> GradedMatrix:
        """Entries raised to the p^e-th power, twists multiplied by p^e."""
        q = self.ctx.p**e
        rows = [[f.frobenius(e) for f in row] for row in self.entries]
        return GradedMatrix(
            self.ctx,
            rows,
            tuple(q * a for a in self.row_twists),
            tuple(q * b for b in self.col_twists),
            check=False,
        )

    def select_columns(self, cols: Sequence[int]) -> GradedMatrix:
        rows = [[row[c] for c in cols] for row in self.entries]
        return GradedMatrix(
            self.ctx, rows, self.row_twists, [self.col_twists[c] for c in cols], check=False
        )

    def select_rows(self, rows_idx: Sequence[int]) -> GradedMatrix:
        rows = [self.entries[r] for r in rows_idx]
        return GradedMatrix(
            self.ctx, rows, [self.row_twists[r] for r in rows_idx], self.col_twists, check=False
        )

    def hstack(self, other: GradedMatrix) -> GradedMatrix:
        if self.row_twists != other.row_twists:
            raise ValueError("row twists differ")
        rows = [r1 + r2 for r1, r2 in zip(self.entries, other.entries)]
        return GradedMatrix(self.ctx, rows, self.row_twists, self.col_twists + other.col_twists, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.row_twists == other.row_twists
            and self.col_twists == other.col_twists
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.row_twists, self.col_twists, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(f) for f in row) for row in self.entries)
        return f"GradedMatrix[{body}] rows={self.row_twists} cols={self.col_twists}"
