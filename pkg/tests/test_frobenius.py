import numpy as np
import pytest

from conftest import cone
from lyubeznik.errors import IndexOutOfRange
from lyubeznik.frobenius import FrobeniusPipeline, bracket_power, f0_matrix, frobenius_of_matrix, ideal_matrix
from lyubeznik.homalg import coker_dimension
from lyubeznik.matrices import GradedMatrix
from lyubeznik.resolution import free_resolution
from lyubeznik.ring import Ideal, PolyRingCtx
from lyubeznik.stable import stable_dimension


def test_bracket_powers():
    ctx = PolyRingCtx.standard(2, 2)
    x0, x1 = ctx.gens()
    assert bracket_power(Ideal(ctx, (x0, x1))).generators == (x0**2, x1**2)
    assert bracket_power(Ideal(ctx, (x0 * x1,)), 2).generators == (x0**4 * x1**4,)
    c3 = PolyRingCtx.standard(3, 2)
    y0, y1 = c3.gens()
    assert bracket_power(Ideal(c3, (y0 + y1,))).generators == (y0**3 + y1**3,)
    with pytest.raises(ValueError):
        bracket_power(Ideal(ctx, (x0,)), 0)


def test_frobenius_of_matrix():
    ctx = PolyRingCtx.standard(2, 2)
    x0, x1 = ctx.gens()
    A = GradedMatrix(ctx, [[x0 + x1]], [0], [1])
    F = frobenius_of_matrix(A)
    assert F.entries[0][0] == x0**2 + x1**2 and F.row_twists == (0,) and F.col_twists == (2,)
    assert frobenius_of_matrix(A, 0) == A
    res = free_resolution(ideal_matrix(Ideal(ctx, (x0, x1))), 3)
    Fr = res.frobenius(1)
    assert Fr.d(1).entries[0] == (x0**2, x1**2)
    assert Fr.is_complex()


@pytest.mark.parametrize("p,gens", [(2, lambda x: [x[0] * x[1], x[1] * x[2]]), (3, lambda x: [x[0] ** 2 - x[1] * x[2]])])
def test_bracketed_resolution_is_exact(p, gens):
    ctx = PolyRingCtx.standard(p, 3)
    I = Ideal(ctx, tuple(gens(ctx.gens())))
    P = FrobeniusPipeline(I).P
    Pp = P.frobenius(1)
    assert Pp.is_complex()
    Ip = ideal_matrix(bracket_power(I))
    for m in range(7):
        alt = sum((-1) ** t * sum(ctx.hilbert(m - a) for a in Pp.twists(t)) for t in range(Pp.length + 1))
        assert alt == coker_dimension(Ip, m)


def test_f0_regular_point():
    c = cone(2, 2, lambda x: [x[0]])
    f = f0_matrix(c.ideal, 1, 1)
    assert f.matrix.tolist() == [[1]]
    assert f0_matrix(c.ideal, 0, 1).size == 0


def test_f0_two_points():
    # M = Ext^1(Ext^1(R/(x0x1), R), R) = R/(x0x1): M_0 is one-dimensional
    c = cone(2, 2, lambda x: [x[0] * x[1]])
    f = f0_matrix(c.ideal, 1, 1)
    assert f.size == 1 and stable_dimension(f) == 1


def test_f0_out_of_range():
    c = cone(2, 2, lambda x: [x[0]])
    with pytest.raises(IndexOutOfRange):
        f0_matrix(c.ideal, 2, 0)


def test_two_skew_lines_f0():
    c = cone(3, 4, lambda x: [x[0] * x[2], x[0] * x[3], x[1] * x[2], x[1] * x[3]])
    pipe = FrobeniusPipeline(c.ideal)
    f = pipe.f0(2, 2)
    assert f.size == 2 and stable_dimension(f) == 2
    assert stable_dimension(pipe.f0(0, 1)) == 1


@pytest.mark.parametrize("p", [2, 3])
def test_stable_rank_invariant_under_permutation_and_minimality(p):
    ctx = PolyRingCtx.standard(p, 4)
    x = ctx.gens()
    g = [x[0] * x[2], x[0] * x[3], x[1] * x[2], x[1] * x[3]]
    perm = [x[2] * x[1], x[2] * x[0], x[3] * x[1], x[3] * x[0]]
    ranks = []
    for gens in (g, perm):
        for minimal in (True, False):
            pipe = FrobeniusPipeline(Ideal(ctx, tuple(gens)), minimal=minimal)
            ranks.append([stable_dimension(pipe.f0(i, j)) for i in range(3) for j in range(3)])
    assert all(r == ranks[0] for r in ranks)


@pytest.mark.parametrize("e", [1, 2, 3, 4])
def test_bracket_quotient_fills_low_degrees(e):
    ctx = PolyRingCtx.standard(2, 2)
    x0, x1 = ctx.gens()
    Ie = ideal_matrix(bracket_power(Ideal(ctx, (x0 * x1,)), e))
    for m in range(9):
        if 2**e > m:
            assert coker_dimension(Ie, m) == ctx.hilbert(m)
