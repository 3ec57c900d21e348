"""Graded Ext modules into R as subquotients, their presentations, and
the F_p-linear algebra of individual graded pieces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg
from .groebner import ColumnModule, column_from_vec, syzygies
from .matrices import GradedMatrix
from .resolution import FreeResolution
from .ring import Monomial, Polynomial, PolyRingCtx, monomials_of_degree


def dual(A: GradedMatrix) -> GradedMatrix:
    """Hom(-, R) of a map of twisted free modules: transpose, twists negated."""
    return A.transpose()


class DegreePiece:
    """Coordinates on the degree-m piece of ⊕_r R(-twists[r])."""

    def __init__(self, ctx: PolyRingCtx, twists: Sequence[int], m: int):
        self.ctx = ctx
        self.twists = tuple(twists)
        self.m = m
        self.basis: list[tuple[int, Monomial]] = []
        for r, a in enumerate(self.twists):
            for mono in monomials_of_degree(ctx.nvars, m - a):
                self.basis.append((r, mono))
        self.index = {b: k for k, b in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vector(self, col: Sequence[Polynomial]) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for r, f in enumerate(col):
            for mono, c in f.as_dict().items():
                v[self.index[(r, mono)]] = c
        return v

    def column(self, v: np.ndarray) -> tuple[Polynomial, ...]:
        terms: list[dict] = [{} for _ in self.twists]
        for k in np.nonzero(v % self.ctx.p)[0]:
            r, mono = self.basis[k]
            terms[r][mono] = int(v[k])
        return tuple(Polynomial(self.ctx, t) for t in terms)

    def span(self, gens: GradedMatrix) -> np.ndarray:
        """Rows spanning (submodule generated by the columns of ``gens``)_m."""
        rows = []
        n = self.ctx.nvars
        for c, b in enumerate(gens.col_twists):
            if b > self.m:
                continue
            col = gens.column(c)
            if not any(col):
                continue
            for mono in monomials_of_degree(n, self.m - b):
                rows.append(self.vector([f.mul_monomial(mono) for f in col]))
        if not rows:
            return np.zeros((0, self.dim), dtype=np.int64)
        return np.array(rows, dtype=np.int64)

    def apply(self, A: GradedMatrix, target: DegreePiece) -> np.ndarray:
        """Matrix of A restricted to this degree piece (columns = images of basis vectors)."""
        out = np.zeros((target.dim, self.dim), dtype=np.int64)
        for k, (r, mono) in enumerate(self.basis):
            col = [A.entries[s][r].mul_monomial(mono) for s in range(A.nrows)]
            out[:, k] = target.vector(col)
        return out


def _reduce_rows(V: np.ndarray, B: np.ndarray, pivots: list[int], p: int) -> np.ndarray:
    """Clear the pivot columns of an RREF row basis B from the rows of V."""
    V = V % p
    for i, pc in enumerate(pivots):
        coef = V[:, pc].copy()
        if coef.any():
            V = (V - np.outer(coef, B[i])) % p
    return V


@dataclass
class DegreeBasis:
    """An F_p basis of (K/Im)_m given by echelon representatives in the ambient."""

    degree: int
    piece: DegreePiece
    reps: np.ndarray  # rows: representatives, RREF and reduced against im_rows
    rep_pivots: list[int]
    im_rows: np.ndarray
    im_pivots: list[int]
    p: int

    @property
    def dim(self) -> int:
        return self.reps.shape[0]

    def vectors(self) -> list[tuple[Polynomial, ...]]:
        return [self.piece.column(row) for row in self.reps]

    def coordinates(self, col: Sequence[Polynomial] | np.ndarray) -> np.ndarray:
        """Coordinates of an element of K_m modulo Im_m in this basis."""
        v = col if isinstance(col, np.ndarray) else self.piece.vector(col)
        v = _reduce_rows(v.reshape(1, -1), self.im_rows, self.im_pivots, self.p)[0]
        coords = v[self.rep_pivots] % self.p if self.rep_pivots else np.zeros(0, dtype=np.int64)
        check = (v - coords @ self.reps) % self.p if self.dim else v
        if check.any():
            raise ValueError("vector does not lie in the kernel part of this piece")
        return coords


@dataclass
class SubquotientModule:
    """K/Im with K, Im spanned by columns of GradedMatrices in ⊕ R(-ambient[r])."""

    ambient: tuple[int, ...]
    ker_gens: GradedMatrix
    im_gens: GradedMatrix

    def __post_init__(self):
        self.ambient = tuple(self.ambient)
        if self.ker_gens.row_twists != self.ambient or self.im_gens.row_twists != self.ambient:
            raise ValueError("generators do not live in the ambient module")

    @property
    def ctx(self) -> PolyRingCtx:
        return self.ker_gens.ctx

    def check_containment(self) -> bool:
        if self.im_gens.ncols == 0:
            return True
        K = ColumnModule(self.ker_gens)
        return all(K.contains(col) for col in self.im_gens.columns())

    def is_zero_by_generators(self) -> bool:
        if self.ker_gens.ncols == 0:
            return True
        if self.im_gens.ncols == 0:
            return False
        Im = ColumnModule(self.im_gens)
        return all(Im.contains(col) for col in self.ker_gens.columns())

    def dimension(self, m: int) -> int:
        return degree_basis(self, m).dim


def degree_basis(S: SubquotientModule, m: int) -> DegreeBasis:
    """F_p basis of (K/Im)_m with reduced echelon representatives."""
    p = S.ctx.p
    piece = DegreePiece(S.ctx, S.ambient, m)
    Im = piece.span(S.im_gens)
    if Im.shape[0]:
        Ib, ipiv = linalg.rref(Im, p)
        Ib = Ib[: len(ipiv)]
    else:
        Ib, ipiv = np.zeros((0, piece.dim), dtype=np.int64), []
    K = piece.span(S.ker_gens)
    if K.shape[0]:
        K = _reduce_rows(K, Ib, ipiv, p)
        Kb, kpiv = linalg.rref(K, p)
        Kb = Kb[: len(kpiv)]
    else:
        Kb, kpiv = np.zeros((0, piece.dim), dtype=np.int64), []
    return DegreeBasis(m, piece, Kb, kpiv, Ib, ipiv, p)


@dataclass
class Presentation:
    """coker(relations) together with the maps to and from a subquotient.

    ``section`` sends generator k to a representative in K; ``project``
    sends an element of K to generator coordinates modulo relations.
    """

    gens_twists: tuple[int, ...]
    relations: GradedMatrix
    subquotient: SubquotientModule | None = None
    section: GradedMatrix | None = None
    _lifter: ColumnModule | None = field(default=None, repr=False)

    @property
    def ngens(self) -> int:
        return len(self.gens_twists)

    def project(self, col: Sequence[Polynomial]) -> tuple[Polynomial, ...]:
        if self._lifter is None:
            raise ValueError("presentation carries no conversion data")
        x = self._lifter.lift_vector(col)
        if x is None:
            raise ValueError("element is not in the kernel module")
        return column_from_vec(self.relations.ctx, {k: v for k, v in x.items() if k < self.ngens}, self.ngens)

    def project_matrix(self, B: GradedMatrix) -> GradedMatrix:
        cols = [self.project(col) for col in B.columns()]
        return GradedMatrix.from_columns(B.ctx, cols, self.gens_twists, B.col_twists)


def minimal_generators(S: SubquotientModule) -> GradedMatrix:
    """A minimal homogeneous generating set of K/Im, chosen greedily by degree."""
    ctx, p = S.ctx, S.ctx.p
    kept: list[int] = []
    K = S.ker_gens
    for delta in sorted(set(K.col_twists)):
        piece = DegreePiece(ctx, S.ambient, delta)
        base = piece.span(S.im_gens)
        if kept:
            base_k = piece.span(K.select_columns(kept))
            base = np.vstack([base, base_k]) if base.size else base_k
        r = linalg.rank(base, p) if base.shape[0] else 0
        for c in range(K.ncols):
            if K.col_twists[c] != delta or not any(K.column(c)):
                continue
            v = piece.vector(K.column(c)).reshape(1, -1)
            trial = np.vstack([base, v]) if base.shape[0] else v
            r2 = linalg.rank(trial, p)
            if r2 > r:
                kept.append(c)
                base, r = trial, r2
    return K.select_columns(kept)


def presentation_of(S: SubquotientModule) -> Presentation:
    """Generators-and-relations form of K/Im with conversion maps."""
    ctx = S.ctx
    G = minimal_generators(S)
    s = G.ncols
    if s == 0:
        rel = GradedMatrix.zeros(ctx, (), ())
        return Presentation((), rel, S, G, None)
    GI = G.hstack(S.im_gens)
    syz = syzygies(GI)
    keep = [c for c in range(syz.ncols) if any(syz.entries[r][c] for r in range(s))]
    rel = syz.select_columns(keep).select_rows(range(s))
    return Presentation(G.col_twists, rel, S, G, ColumnModule(GI))


def ext_subquotient(res: FreeResolution, t: int) -> SubquotientModule:
    """Ext^t(coker d_1, R) = ker(d_{t+1}^T) / im(d_t^T) inside F_t^∨."""
    ctx = res.ctx
    if t < 0 or (t >= res.length and res.twists(res.length)):
        raise ValueError(f"resolution of length {res.length} does not determine Ext^{t}")
    Ft = res.twists(t)
    amb = tuple(-a for a in Ft)
    if not Ft:
        z = GradedMatrix.zeros(ctx, (), ())
        return SubquotientModule((), z, z)
    nxt = dual(res.d(t + 1))
    ker = syzygies(nxt) if nxt.ncols else GradedMatrix.zeros(ctx, amb, ())
    im = dual(res.d(t)) if t >= 1 else GradedMatrix.zeros(ctx, amb, ())
    return SubquotientModule(amb, ker, im)


def ext_presentation(res: FreeResolution, t: int) -> tuple[SubquotientModule, Presentation]:
    S = ext_subquotient(res, t)
    return S, presentation_of(S)


def chain_lift(phi0: GradedMatrix, src: FreeResolution, tgt: FreeResolution, upto: int) -> list[GradedMatrix]:
    """Lift phi0 : F_0(src) -> F_0(tgt) to maps phi_t : F_t(src) -> F_t(tgt), t <= upto.

    Requires tgt exact and phi0 to induce a map of cokernels.
    """
    maps = [phi0]
    for t in range(1, upto + 1):
        rhs = maps[-1] @ src.d(t)
        A = tgt.d(t)
        if rhs.ncols == 0:
            maps.append(GradedMatrix.zeros(A.ctx, A.col_twists, rhs.col_twists))
        elif A.ncols == 0:
            if not rhs.is_zero():
                from .errors import NotInImage

                raise NotInImage(f"cannot lift into the zero module at step {t}")
            maps.append(GradedMatrix.zeros(A.ctx, (), rhs.col_twists))
        else:
            maps.append(ColumnModule(A).lift(rhs))
    return maps


def induced_ext_map(phi0: GradedMatrix, res_src: FreeResolution, res_tgt: FreeResolution, t: int) -> GradedMatrix:
    """Ext^t(tgt, R) -> Ext^t(src, R) on ambient duals, induced by phi0 : src -> tgt."""
    return dual(chain_lift(phi0, res_src, res_tgt, t)[t])


def ext_map_matrix(A: GradedMatrix, src: DegreeBasis, tgt: DegreeBasis) -> np.ndarray:
    """Matrix (tgt coords x src coords) of the ambient map A restricted to degree pieces."""
    out = np.zeros((tgt.dim, src.dim), dtype=np.int64)
    M = src.piece.apply(A, tgt.piece)
    for k in range(src.dim):
        out[:, k] = tgt.coordinates((M @ src.reps[k]) % src.p)
    return out


def coker_dimension(relations: GradedMatrix, m: int) -> int:
    """dim_k (coker relations)_m."""
    piece = DegreePiece(relations.ctx, relations.row_twists, m)
    span = piece.span(relations)
    return piece.dim - (linalg.rank(span, relations.ctx.p) if span.shape[0] else 0)


def free_dimension(ctx: PolyRingCtx, twists: Sequence[int], m: int) -> int:
    return sum(ctx.hilbert(m - a) for a in twists)
