import random

import pytest

from conftest import cone, corpus
from lyubeznik.cone import (
    ConeComputation,
    ConeInput,
    krull_dimension,
    lyubeznik_number,
    lyubeznik_table,
    m0_dimension,
    m0_table,
)
from lyubeznik.embeddings import coordinate_change, permute_variables, random_unipotent
from lyubeznik.errors import EmptyScheme, ImproperIdeal
from lyubeznik.ring import Ideal, PolyRingCtx


def test_krull_dimension_examples():
    assert krull_dimension(cone(2, 2, lambda x: [x[0]]).ideal) == 1
    assert krull_dimension(Ideal(PolyRingCtx.standard(2, 3), ())) == 3
    assert krull_dimension(cone(2, 2, lambda x: [x[0] * x[1]]).ideal) == 1
    ctx = PolyRingCtx.standard(3, 4)
    x0, x1, x2, x3 = ctx.gens()
    cubic = Ideal(ctx, (x0 * x2 - x1**2, x1 * x3 - x2**2, x0 * x3 - x1 * x2))
    assert krull_dimension(cubic) == 2


def test_improper_and_empty():
    ctx = PolyRingCtx.standard(2, 2)
    with pytest.raises(ImproperIdeal):
        krull_dimension(Ideal(ctx, (ctx.one(),)))
    with pytest.raises(EmptyScheme):
        ConeInput.from_generators(ctx, ctx.gens())


def test_regular_point_cells():
    c = cone(2, 2, lambda x: [x[0]])
    assert lyubeznik_number(c, 1, 1) == 1
    assert lyubeznik_number(c, 0, 0) == 0
    assert lyubeznik_table(c).nonzero() == {(1, 1): 1}
    assert m0_dimension(c, 1, 1) == 1


def test_projective_line():
    c = cone(2, 2)
    assert lyubeznik_table(c).nonzero() == {(2, 2): 1}
    assert m0_dimension(c, c.n + 1, c.n + 1) == 1


def test_two_points_on_a_line():
    # hand computation: H^1_(f)(R) = R_f/R and Ext^i(k, R_f) = 0, so
    # Ext^i(k, R_f/R) = Ext^{i+1}(k, R): only lambda_{1,1} = 1
    c = cone(2, 2, lambda x: [x[0] * x[1]])
    assert lyubeznik_table(c).nonzero() == {(1, 1): 1}
    assert m0_table(c).nonzero() == {(1, 1): 1}


def test_two_skew_lines_in_p3():
    for p in (2, 3):
        c = cone(p, 4, lambda x: [x[0] * x[2], x[0] * x[3], x[1] * x[2], x[1] * x[3]])
        assert lyubeznik_table(c).nonzero() == {(0, 1): 1, (2, 2): 2}


def test_out_of_range_cells_are_zero():
    c = cone(2, 2, lambda x: [x[0]])
    comp = ConeComputation(c)
    assert comp.lyubeznik_number(5, 1) == 0 and comp.m0_dimension(-1, 0) == 0
    assert comp.lyubeznik_table()[7, 7] == 0


def test_cell_filter():
    c = cone(2, 3)
    T = ConeComputation(c).lyubeznik_table(cells={(3, 3)})
    assert T.nonzero() == {(3, 3): 1}


CORPUS = corpus()


@pytest.mark.parametrize("label,c", CORPUS)
def test_bound_and_top_number(label, c):
    comp = ConeComputation(c)
    lam, m0 = comp.lyubeznik_table(), comp.m0_table()
    assert lam.size == c.d + 2
    for i, j in c.cells():
        assert 0 <= lam[i, j] <= m0[i, j]
    assert lam[c.d + 1, c.d + 1] >= 1


@pytest.mark.parametrize("label,c", CORPUS[::5])
def test_unipotent_change_p3(label, c):
    ctx3 = PolyRingCtx.standard(3, c.ring.nvars)
    c3 = ConeInput(ctx3, Ideal(ctx3, tuple(ctx3.monomial(g.lead()[0]) for g in c.ideal.generators)))
    base = lyubeznik_table(c3)
    rng = random.Random(label)
    assert lyubeznik_table(coordinate_change(c3, random_unipotent(ctx3.nvars, 3, rng))) == base
    perm = list(range(ctx3.nvars))
    rng.shuffle(perm)
    assert lyubeznik_table(permute_variables(c3, perm)) == base


def test_determinism():
    c = cone(3, 4, lambda x: [x[0] * x[2], x[0] * x[3], x[1] * x[2], x[1] * x[3]])
    a = ConeComputation(c)
    b = ConeComputation(c)
    assert a.pipeline.f0(2, 2).matrix.tolist() == b.pipeline.f0(2, 2).matrix.tolist()
    assert a.rank_sequence(2, 2) == b.rank_sequence(2, 2) == [2, 2]
