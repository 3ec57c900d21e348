"""Alternative embeddings of one projective scheme and cross-embedding comparison.

dim M_0 for every cell is an invariant of X (it does not depend on the
embedding), so ``compare_invariants`` asserts equality of the m0 tables.  The
Lyubeznik tables themselves are only reported: whether they are
embedding-independent in characteristic p is open.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .cone import ConeComputation, ConeInput, LyubeznikTable, M0Table
from .errors import DimensionMismatch, ResourceLimit
from .groebner import GREVLEX, elimination_order, reduced_groebner
from .ring import Ideal, Polynomial, PolyRingCtx, monomials_of_degree

DEFAULT_MAX_VARS = 20


@dataclass(frozen=True)
class EmbeddingPresentation:
    cone: ConeInput
    provenance: str = "original"


def veronese_ideal(c: ConeInput, t: int, max_vars: int = DEFAULT_MAX_VARS) -> ConeInput:
    """Ideal of the t-uple re-embedding of Proj(R/I).

    y_k stands for the k-th monomial of degree t in descending lex order of
    exponent vectors (x0^t first).  The ideal is the kernel of y_k -> x^alpha_k
    modulo I, found by eliminating the x variables.
    """
    if t < 1:
        raise ValueError("Veronese degree t must be at least 1")
    ctx = c.ring
    nx = ctx.nvars
    alphas = monomials_of_degree(nx, t)
    ny = len(alphas)
    assert ny == comb(nx - 1 + t, t)
    if ny > max_vars:
        raise ResourceLimit(f"Veronese embedding needs {ny} > {max_vars} variables")
    xnames = tuple(f"_x{k}" for k in range(nx))
    ynames = tuple(f"y{k}" for k in range(ny))
    big = PolyRingCtx(ctx.p, xnames + ynames)

    def lift(f: Polynomial) -> Polynomial:
        return Polynomial._raw(big, {m + (0,) * ny: a for m, a in f})

    gens = [lift(f) for f in c.ideal.generators]
    for k, alpha in enumerate(alphas):
        y = (0,) * nx + tuple(int(i == k) for i in range(ny))
        gens.append(Polynomial._raw(big, {y: 1, alpha + (0,) * ny: ctx.p - 1}))
    # deg y = t makes every generator homogeneous
    order = elimination_order(nx, weights=[1] * nx + [t] * ny)
    small = PolyRingCtx(ctx.p, ynames)
    kept = []
    for g in reduced_groebner(gens, order):
        if all(not any(m[:nx]) for m, _ in g):
            kept.append(Polynomial._raw(small, {m[nx:]: a for m, a in g}))
    return ConeInput(small, Ideal(small, tuple(reduced_groebner(kept, GREVLEX)) if kept else ()))


def linear_augment(c: ConeInput) -> ConeInput:
    """Same X inside the hyperplane x_{n+1} = 0 of P^{n+1}."""
    ctx = c.ring
    names = ctx.names + (_fresh_name(ctx.names),)
    big = PolyRingCtx(ctx.p, names)
    gens = [Polynomial._raw(big, {m + (0,): a for m, a in f}) for f in c.ideal.generators]
    gens.append(big.var(ctx.nvars))
    return ConeInput(big, Ideal(big, tuple(gens)))


def _fresh_name(names: Sequence[str]) -> str:
    stem = names[0].rstrip("0123456789") or "x"
    k = len(names)
    while f"{stem}{k}" in names:
        k += 1
    return f"{stem}{k}"


def coordinate_change(c: ConeInput, matrix: Sequence[Sequence[int]]) -> ConeInput:
    """Substitute x_i -> sum_k matrix[i][k] x_k (matrix must be invertible mod p)."""
    ctx = c.ring
    from . import linalg

    linalg.inverse(matrix, ctx.p)  # raises on singular input
    xs = ctx.gens()
    images = []
    for row in matrix:
        acc = ctx.zero()
        for a, x in zip(row, xs):
            if a % ctx.p:
                acc = acc + x.scale(a)
        images.append(acc)
    gens = tuple(f.substitute(images) for f in c.ideal.generators)
    return ConeInput(ctx, Ideal(ctx, gens))


def permute_variables(c: ConeInput, perm: Sequence[int]) -> ConeInput:
    """x_i -> x_{perm[i]}."""
    n = c.ring.nvars
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation of the variables")
    return coordinate_change(c, [[int(k == perm[i]) for k in range(n)] for i in range(n)])


def random_unipotent(nvars: int, p: int, rng: random.Random) -> list[list[int]]:
    """Upper unitriangular matrix with uniform entries above the diagonal."""
    return [[1 if i == k else (rng.randrange(p) if k > i else 0) for k in range(nvars)] for i in range(nvars)]


def veronese(c: ConeInput, t: int, max_vars: int = DEFAULT_MAX_VARS) -> EmbeddingPresentation:
    return EmbeddingPresentation(veronese_ideal(c, t, max_vars), f"veronese t={t}")


def augmented(c: ConeInput) -> EmbeddingPresentation:
    return EmbeddingPresentation(linear_augment(c), "linear-augment")


def changed(c: ConeInput, matrix: Sequence[Sequence[int]]) -> EmbeddingPresentation:
    rows = ";".join(",".join(str(a) for a in row) for row in matrix)
    return EmbeddingPresentation(coordinate_change(c, matrix), f"coordinate-change [{rows}]")


@dataclass
class Verdict:
    equal: bool
    first_difference: tuple[int, int] | None = None  # between input 0 and the first disagreeing input
    against: int | None = None


@dataclass
class ComparisonReport:
    inputs: list[EmbeddingPresentation]
    d: int
    m0_tables: list[M0Table]
    lyubeznik_tables: list[LyubeznikTable]
    rank_sequences: list[dict[tuple[int, int], list[int]]]
    verdicts: dict[str, Verdict] = field(default_factory=dict)

    def distinct_values(self) -> dict[tuple[int, int], list[int]]:
        """Per cell, the sorted distinct lambda values seen across the inputs."""
        size = self.d + 2
        return {
            (i, j): sorted({T[i, j] for T in self.lyubeznik_tables})
            for i in range(size)
            for j in range(size)
        }

    def lines(self) -> list[str]:
        out = []
        for k, e in enumerate(self.inputs):
            out.append(f"input {k}: {e.provenance}; {e.cone.ring.nvars} variables; ideal {e.cone.ideal}")
        out.append(f"d = {self.d}")
        for name, v in self.verdicts.items():
            if v.equal:
                out.append(f"{name}: yes")
            else:
                i, j = v.first_difference
                out.append(f"{name}: no (input 0 vs input {v.against}, first at cell ({i},{j}))")
        return out


def _verdict(tables) -> Verdict:
    for k, T in enumerate(tables[1:], start=1):
        diff = tables[0].first_difference(T)
        if diff is not None:
            return Verdict(False, diff, k)
    return Verdict(True)


def compare_invariants(inputs: Sequence[EmbeddingPresentation], minimal: bool = True) -> ComparisonReport:
    """m0 and lambda tables for each presentation of the same X.

    Raises DimensionMismatch when the inputs disagree on d and AssertionError
    when the m0 tables differ (they cannot for presentations of one X).
    """
    inputs = list(inputs)
    if len(inputs) < 2:
        raise ValueError("need at least two embeddings to compare")
    ds = {e.cone.d for e in inputs}
    if len(ds) != 1:
        raise DimensionMismatch(f"inputs have different dimensions {sorted(ds)}")
    d = ds.pop()
    m0s, lams, seqs = [], [], []
    for e in inputs:
        comp = ConeComputation(e.cone, minimal=minimal)
        m0s.append(comp.m0_table())
        lams.append(comp.lyubeznik_table())
        seqs.append({(i, j): comp.rank_sequence(i, j) for i, j in e.cone.cells()})
    report = ComparisonReport(inputs, d, m0s, lams, seqs)
    report.verdicts["EQUAL_M0"] = _verdict(m0s)
    report.verdicts["EQUAL_LAMBDA"] = _verdict(lams)
    v = report.verdicts["EQUAL_M0"]
    assert v.equal, f"m0 tables differ at {v.first_difference} (input 0 vs {v.against})"
    return report
