import random

import numpy as np
from hypothesis import given, settings, strategies as st

from lyubeznik import linalg
from lyubeznik.stable import PLinearEndo, rank_sequence, stable_dimension


def endo(rows, p=2):
    return PLinearEndo(np.array(rows, dtype=np.int64), p)


def test_examples():
    assert stable_dimension(endo(np.eye(3, dtype=np.int64))) == 3
    assert stable_dimension(endo([[0, 1], [0, 0]])) == 0
    assert stable_dimension(endo([[1, 1], [0, 0]])) == 1
    assert stable_dimension(PLinearEndo(np.zeros((0, 0)), 3)) == 0


def test_rank_sequence_and_exponent():
    f = endo([[0, 1, 0], [0, 0, 1], [0, 0, 0]], 3)
    assert rank_sequence(f) == [2, 1, 0]
    assert f.semilinear_exp == 3


matrices = st.integers(1, 6).flatmap(
    lambda r: st.tuples(
        st.sampled_from([2, 3, 5]),
        st.lists(st.lists(st.integers(0, 4), min_size=r, max_size=r), min_size=r, max_size=r),
    )
)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_stabilizes_within_size(data):
    p, rows = data
    A = np.array(rows, dtype=np.int64) % p
    r = A.shape[0]
    s = stable_dimension(PLinearEndo(A, p))
    nxt = linalg.rank(linalg.matpow(A, r + 1, p), p)
    assert s == nxt
    assert 0 <= s <= r
    assert (s == r) == (linalg.rank(A, p) == r)


@settings(max_examples=60, deadline=None)
@given(matrices, st.integers(0, 2**32))
def test_conjugation_invariance(data, seed):
    rnd = random.Random(seed)
    p, rows = data
    A = np.array(rows, dtype=np.int64) % p
    r = A.shape[0]
    while True:
        S = np.array([[rnd.randrange(p) for _ in range(r)] for _ in range(r)], dtype=np.int64)
        if linalg.rank(S, p) == r:
            break
    B = linalg.matmul(linalg.matmul(S, A, p), linalg.inverse(S, p), p)
    assert stable_dimension(PLinearEndo(A, p)) == stable_dimension(PLinearEndo(B, p))
