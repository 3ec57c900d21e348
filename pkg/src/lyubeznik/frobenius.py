"""The Frobenius functor on matrices and the Frobenius action on
M = Ext^{n+1-i}(Ext^{n+1-j}(R/I, R), R), restricted to its degree-0 piece.

The action is f = (map induced by R/I^[p] -> R/I) ∘ (identification
F(M) = Ext(Ext(R/I^[p], R), R)) ∘ (m -> 1 ⊗ m).  Concretely, a cycle v of
the dualized resolution of E = Ext^{n+1-j}(R/I, R) goes to v^[p] (entries
raised to the p-th power), then back through the transpose of a chain map
Q -> Q^[p] covering the map E -> F(E) induced by R/I^[p] -> R/I.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import IndexOutOfRange
from .groebner import ColumnModule
from .homalg import (
    DegreeBasis,
    Presentation,
    SubquotientModule,
    chain_lift,
    degree_basis,
    dual,
    ext_presentation,
    ext_subquotient,
)
from .matrices import GradedMatrix
from .resolution import FreeResolution, free_resolution, minimalize
from .ring import Ideal, Polynomial
from .stable import PLinearEndo


def bracket_power(I: Ideal, e: int = 1) -> Ideal:
    """I^[p^e]: generated by the p^e-th powers of the generators."""
    if e < 1:
        raise ValueError("bracket exponent must be at least 1")
    return I.frobenius(e)


def frobenius_of_matrix(A: GradedMatrix, e: int = 1) -> GradedMatrix:
    return A.frobenius(e)


def ideal_matrix(I: Ideal) -> GradedMatrix:
    """The 1 x g presentation R(-deg g_k) -> R of R/I."""
    gens = I.generators
    return GradedMatrix(I.ctx, [list(gens)], [0], [g.degree() for g in gens])


def _apply(A: GradedMatrix, col) -> tuple[Polynomial, ...]:
    z = A.ctx.zero()
    out = []
    for row in A.entries:
        acc = z
        for f, g in zip(row, col):
            if f and g:
                acc = acc + f * g
        out.append(acc)
    return tuple(out)


class _Outer:
    """Data attached to one E = Ext^{n+1-j}(R/I, R)."""

    def __init__(self, S: SubquotientModule, pres: Presentation, Q: FreeResolution,
                 theta: list[GradedMatrix] | None):
        self.S = S
        self.pres = pres
        self.Q = Q
        self.theta = theta


class FrobeniusPipeline:
    """Shared resolutions and chain maps for every (i, j) cell of one ideal.

    ``minimal`` toggles minimalization of the resolutions P of R/I and Q of
    each E; the stable ranks do not depend on it.
    """

    def __init__(self, ideal: Ideal, minimal: bool = True):
        self.ideal = ideal
        self.ctx = ideal.ctx
        self.minimal = minimal
        n = self.ctx.n
        self.length = n + 2
        raw = free_resolution(ideal_matrix(ideal), self.length)
        self.P = minimalize(raw) if minimal else raw
        self.Pp = self.P.frobenius(1)
        one = GradedMatrix.identity(self.ctx, (0,))
        self.phi = chain_lift(one, self.Pp, self.P, n + 1)

    @lru_cache(maxsize=None)
    def outer(self, j: int) -> _Outer:
        n, ctx = self.ctx.n, self.ctx
        t = n + 1 - j
        S, pres = ext_presentation(self.P, t)
        Q = free_resolution(pres.relations, self.length) if pres.ngens else None
        if Q is None:
            return _Outer(S, pres, None, None)
        if self.minimal:
            Q = minimalize(Q, keep_generators=True)
        Qp = Q.frobenius(1)
        G = pres.section
        Gp = G.frobenius(1)
        lifter = ColumnModule(Gp.hstack(S.im_gens.frobenius(1)))
        W = dual(self.phi[t]) @ G
        s = pres.ngens
        cols = []
        for c, col in enumerate(W.columns()):
            x = lifter.lift_vector(col)
            if x is None:
                raise AssertionError("image of E does not land in Ext(R/I^[p], R)")
            cols.append(tuple(
                Polynomial._raw(ctx, dict(x[k])) if k in x else ctx.zero() for k in range(s)
            ))
        psi0 = GradedMatrix.from_columns(ctx, cols, Gp.col_twists, G.col_twists)
        theta = chain_lift(psi0, Q, Qp, n + 1)
        return _Outer(S, pres, Q, theta)

    @lru_cache(maxsize=None)
    def inner(self, i: int, j: int) -> tuple[SubquotientModule | None, DegreeBasis | None]:
        out = self.outer(j)
        if out.Q is None:
            return None, None
        u = self.ctx.n + 1 - i
        SM = ext_subquotient(out.Q, u)
        return SM, degree_basis(SM, 0)

    def m0_dimension(self, i: int, j: int) -> int:
        basis = self.inner(i, j)[1]
        return 0 if basis is None else basis.dim

    def f0(self, i: int, j: int) -> PLinearEndo:
        p = self.ctx.p
        SM, basis = self.inner(i, j)
        if basis is None or basis.dim == 0:
            return PLinearEndo(np.zeros((0, 0), dtype=np.int64), p, basis)
        u = self.ctx.n + 1 - i
        back = dual(self.outer(j).theta[u])
        A = np.zeros((basis.dim, basis.dim), dtype=np.int64)
        for k, v in enumerate(basis.vectors()):
            w = _apply(back, [f.frobenius(1) for f in v])
            for f, a in zip(w, SM.ambient):
                # deg f(m) = p deg m = 0
                assert not f or (f.is_homogeneous() and f.degree() == -a), "f leaves degree 0"
            A[:, k] = basis.coordinates(w)
        return PLinearEndo(A, p, basis)


def f0_matrix(I: Ideal, i: int, j: int, minimal: bool = True,
              pipeline: FrobeniusPipeline | None = None) -> PLinearEndo:
    """Matrix of the Frobenius action on M_0 for the cell (i, j)."""
    from .cone import krull_dimension

    d = krull_dimension(I) - 1
    if not (0 <= i <= d + 1 and 0 <= j <= d + 1):
        raise IndexOutOfRange(f"(i, j) = ({i}, {j}) outside [0, {d + 1}]")
    pipe = pipeline or FrobeniusPipeline(I, minimal=minimal)
    return pipe.f0(i, j)
